#pragma once

// Exact linear algebra over Z and Q: Smith/Hermite normal forms, kernels,
// ranks, solves. Everything here is integer/rational; no floating point.

#include <optional>

#include "tordiv/numeric.hpp"

namespace tordiv {

struct SmithForm {
    IntMatrix U; // rows x rows, unimodular
    IntMatrix D; // rows x cols, diagonal, d_i | d_{i+1}, d_i >= 0
    IntMatrix V; // cols x cols, unimodular

    /// Diagonal entries d_0, d_1, ... (min(rows, cols) of them).
    std::vector<Integer> invariant_factors() const;
};

/// U * M * V = D with D in Smith normal form.
SmithForm smith_normal_form(const IntMatrix& M);

struct HermiteForm {
    IntMatrix H; // row echelon, positive pivots, entries above a pivot reduced into [0, pivot)
    IntMatrix U; // unimodular, H = U * M
    std::vector<Eigen::Index> pivot_columns;
    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_columns.size()); }
};

/// Row-style Hermite normal form.
HermiteForm hermite_normal_form(const IntMatrix& M);

/// Basis (as columns) of the integer kernel {x in Z^n : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& M);

/// True when the columns of B span a saturated (primitive) sublattice of Z^n,
/// i.e. all invariant factors of B equal 1 and the columns are independent.
bool is_saturated(const IntMatrix& B);

/// Unimodular n x n matrix whose first k columns are the (saturated) columns of B.
IntMatrix complete_to_basis(const IntMatrix& B);

Integer determinant(const IntMatrix& M);
Rational determinant(const RatMatrix& M);

Eigen::Index rank(const RatMatrix& M);
inline Eigen::Index rank(const IntMatrix& M) { return rank(to_rational(M)); }

/// Reduced row echelon form (in place) returning the pivot columns.
std::vector<Eigen::Index> rref(RatMatrix& M);

/// Some solution of A x = b, or nullopt when inconsistent. Free variables are set to zero.
std::optional<RatVector> solve(const RatMatrix& A, const RatVector& b);

/// Basis (columns) of the rational kernel of A.
RatMatrix rational_kernel(const RatMatrix& A);

RatMatrix inverse(const RatMatrix& A);

/// Integer solution of A x = b if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b);

/// Membership of a rational vector in the Z-span of the columns of B.
bool in_integer_span(const IntMatrix& B, const RatVector& v);

} // namespace tordiv
