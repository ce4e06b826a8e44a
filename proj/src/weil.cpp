#include "tordiv/weil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tordiv {

namespace {

Complex e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

} // namespace

WeilRepMatrices weil_matrices(const DiscriminantForm& disc, const Signature& sig)
{
    const auto n = static_cast<Eigen::Index>(disc.order());
    WeilRepMatrices w;
    w.rho_T = ComplexMatrix::Zero(n, n);
    w.rho_S = ComplexMatrix::Zero(n, n);
    const auto els = disc.elements();
    const Complex pre = e(-static_cast<double>(sig.positive - sig.negative) / 8.0) / std::sqrt(static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        w.rho_T(i, i) = e(static_cast<double>(disc.q(els[static_cast<std::size_t>(i)])));
        for (Eigen::Index j = 0; j < n; ++j) {
            const double b = static_cast<double>(disc.b(els[static_cast<std::size_t>(i)], els[static_cast<std::size_t>(j)]));
            w.rho_S(i, j) = pre * e(-b);
        }
    }
    return w;
}

double unitarity_defect(const ComplexMatrix& m)
{
    const ComplexMatrix d = m * m.adjoint() - ComplexMatrix::Identity(m.rows(), m.cols());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            worst = std::max(worst, std::abs(d(i, j)));
        }
    }
    return worst;
}

ComplexVector evaluate(const VVQExpansion& f, Complex tau)
{
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(f.dim()));
    const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
    for (const auto& [ex, row] : f.terms()) {
        const Complex qe = std::exp(two_pi_i * tau * static_cast<double>(ex));
        for (std::size_t j = 0; j < f.dim(); ++j) {
            if (row[j] != 0) {
                v(static_cast<Eigen::Index>(j)) += static_cast<double>(row[j]) * qe;
            }
        }
    }
    return v;
}

double theta_s_defect(const EvenLattice& D, Complex tau, const Rational& prec, const Rational& perturb)
{
    VVQExpansion theta = theta_definite(D, prec);
    if (perturb != 0) {
        for (const auto& [ex, row] : theta.terms()) {
            if (ex > 0) {
                const auto j = static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](const Rational& c) { return c != 0; }) - row.begin());
                theta.add_term(ex, j, perturb);
                break;
            }
        }
    }
    const WeilRepMatrices w = weil_matrices(D.discriminant(), D.signature());
    const ComplexVector lhs = evaluate(theta, -1.0 / tau);
    const ComplexVector rhs = std::pow(tau, static_cast<double>(D.rank()) / 2.0) * (w.rho_S * evaluate(theta, tau));
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

} // namespace tordiv
