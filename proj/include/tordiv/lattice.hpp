#pragma once

// Even lattices, their discriminant forms, and exact short-vector enumeration.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tordiv/linalg.hpp"

namespace tordiv {

struct Signature {
    int positive = 0;
    int negative = 0;
    bool operator==(const Signature&) const = default;
};

/// (p, q) of a symmetric non-degenerate integer matrix, by exact congruence
/// diagonalisation. Throws InvalidInput for degenerate input.
Signature gram_signature(const IntMatrix& gram);

/// Finite quadratic module L^* / L.
///
/// Elements are coordinate tuples modulo the non-trivial elementary divisors
/// d_1 | d_2 | ... of the Gram matrix. Each element has a fixed lift to L^*
/// (coordinates in the basis of L, reduced into [0, 1)), derived from the
/// Smith decomposition of the Gram matrix.
class DiscriminantForm {
public:
    using Element = std::vector<long>;

    DiscriminantForm() = default;
    explicit DiscriminantForm(const IntMatrix& gram);

    const std::vector<long>& cyclic_orders() const { return orders_; }
    std::size_t order() const { return order_; }
    std::size_t lattice_rank() const { return static_cast<std::size_t>(gram_.rows()); }

    /// Mixed-radix index in [0, order()).
    std::size_t index(const Element& e) const;
    Element element(std::size_t index) const;
    std::vector<Element> elements() const;
    Element zero() const { return Element(orders_.size(), 0); }

    Element add(const Element& a, const Element& b) const;
    Element negate(const Element& a) const;
    bool is_valid(const Element& e) const;

    /// Coset representative in L^*, coordinates in the basis of L, each in [0, 1).
    RatVector lift(const Element& e) const;

    /// Class of a vector of L^* (basis-of-L coordinates). Throws when v is not in L^*.
    Element reduce(const RatVector& v) const;

    bool in_dual(const RatVector& v) const;

    /// mu^2 / 2 mod 1, in [0, 1).
    Rational q(const Element& e) const;
    /// (mu, nu) mod 1, in [0, 1).
    Rational b(const Element& x, const Element& y) const;

    /// Exponent denominator: lcm of the denominators of all q-values.
    Integer level() const;

private:
    IntMatrix gram_;
    std::vector<long> orders_;
    std::size_t order_ = 1;
    RatMatrix lift_basis_;  // columns: lifts of the cyclic generators
    RatMatrix reduce_rows_; // rows: v -> coordinate before reduction mod d_i
};

class EvenLattice {
public:
    EvenLattice() = default;
    /// Validates symmetry, evenness and non-degeneracy.
    EvenLattice(IntMatrix gram, std::string label);

    const IntMatrix& gram() const { return gram_; }
    std::size_t rank() const { return static_cast<std::size_t>(gram_.rows()); }
    const Signature& signature() const { return signature_; }
    const std::string& label() const { return label_; }
    const DiscriminantForm& discriminant() const { return *discriminant_; }
    Integer determinant() const { return determinant_; }

    Integer pair(const IntVector& x, const IntVector& y) const { return x.dot(gram_ * y); }
    Rational pair(const RatVector& x, const RatVector& y) const { return x.dot(to_rational(gram_) * y); }
    Integer norm(const IntVector& x) const { return pair(x, x); }
    Rational norm(const RatVector& x) const { return pair(x, x); }

    bool is_positive_definite() const
    {
        return signature_.negative == 0 && signature_.positive == static_cast<int>(rank());
    }

    static EvenLattice hyperbolic_plane();
    static EvenLattice diagonal(const std::vector<long>& entries, std::string label = "");
    static EvenLattice direct_sum(const std::vector<EvenLattice>& parts, std::string label = "");

private:
    IntMatrix gram_;
    std::string label_;
    Signature signature_;
    Integer determinant_ = 1;
    std::shared_ptr<const DiscriminantForm> discriminant_ = std::make_shared<DiscriminantForm>(IntMatrix(0, 0));
};

struct ShortVector {
    RatVector vector; // coordinates in the lattice basis (shift + integers)
    Rational norm;    // v^T G v
};

/// All v in shift + Z^n with v^T G v <= 2 * bound, each exactly once, in
/// lexicographic order of coordinates. G must be positive definite (rational
/// entries allowed). Fincke-Pohst enumeration over an exact LDL^T decomposition.
std::vector<ShortVector> short_vectors(const RatMatrix& gram, const Rational& bound, const RatVector& shift);

std::vector<ShortVector> short_vectors(const IntMatrix& gram, const Rational& bound, const RatVector& shift);

/// #{beta in coset : beta^2 = 2 m} for a positive definite lattice.
Integer coset_representation_count(const EvenLattice& lattice, const DiscriminantForm::Element& coset,
                                   const Rational& m);

} // namespace tordiv
