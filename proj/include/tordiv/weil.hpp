#pragma once

// Floating-point Weil representation matrices, used only to validate sign
// conventions of the exact series against their modular transformations.

#include <complex>

#include <Eigen/Core>

#include "tordiv/lattice.hpp"
#include "tordiv/qseries.hpp"

namespace tordiv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

struct WeilRepMatrices {
    ComplexMatrix rho_T; // diagonal, e(q(gamma))
    ComplexMatrix rho_S; // e(-(p - q)/8) / sqrt|Delta| * [e(-(gamma, delta))]
    std::size_t dim() const { return static_cast<std::size_t>(rho_T.rows()); }
};

WeilRepMatrices weil_matrices(const DiscriminantForm& disc, const Signature& sig);

/// max |(M M^H - I)_{ij}|.
double unitarity_defect(const ComplexMatrix& m);

/// Evaluates a truncated expansion at tau (Im tau > 0), componentwise.
ComplexVector evaluate(const VVQExpansion& f, Complex tau);

/// max over components of |Theta(-1/tau) - tau^{rank/2} rho(S) Theta(tau)|, with Theta
/// the theta series of D truncated at prec. A non-zero `perturb` is added to the
/// first non-constant coefficient (a test hook).
double theta_s_defect(const EvenLattice& D, Complex tau, const Rational& prec, const Rational& perturb = 0);

} // namespace tordiv
