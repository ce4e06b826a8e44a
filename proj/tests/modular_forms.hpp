#pragma once

// Genuinely modular inputs for the divisor tests: Theta_P * f with P positive
// definite, Delta_P anti-isometric to Delta_L, and f weakly holomorphic of level 1.

#include <random>
#include <string>
#include <vector>

#include "tordiv/isotropic.hpp"
#include "tordiv/qseries.hpp"

namespace modular {

/// Coefficients of q^0 .. q^{len-1}.
using Series = std::vector<tordiv::Integer>;

Series mul(const Series& a, const Series& b);
/// 1 / a for a[0] = 1.
Series inverse(const Series& a);
Series eisenstein_E4(std::size_t len);
/// prod (1 - q^n)^24, so that Delta = q * eta24.
Series eta24(std::size_t len);

tordiv::IntMatrix cartan_D(int n);
tordiv::IntMatrix cartan_E(int n);

/// phi with q_L(phi(g)) = -q_P(g), additive; indices of Delta_P to indices of Delta_L.
std::vector<std::size_t> anti_isometry(const tordiv::DiscriminantForm& P, const tordiv::DiscriminantForm& L);

struct ThetaProductExample {
    std::string label;
    tordiv::EvenLattice P;
    tordiv::Rank2CuspData r2;
    std::vector<std::size_t> phi;
};

/// E7 / U+U+<2> (the Siegel lattice), D7 / U+U+<4>, E6 / U+U+A2, D6 / U+U+<2>+<2>.
std::vector<ThetaProductExample> theta_products();

/// Principal part and constants of Theta_P * E4^2 / Delta * sum_k poly[k] j^k.
tordiv::PrincipalPart theta_product(const ThetaProductExample& ex, const std::vector<long>& poly);
tordiv::PrincipalPart random_theta_product(const ThetaProductExample& ex, std::mt19937_64& rng);

/// Theta_{E7} * E4^2 / Delta on the Siegel lattice: q^-1 e_0 + 56 q^-1/4 e_1 + 630 e_0 + ...
tordiv::PrincipalPart siegel_e7_example();

} // namespace modular
