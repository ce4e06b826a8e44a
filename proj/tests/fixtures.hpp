#pragma once

// Lattices and cusp data shared by the test suites.

#include <vector>

#include "tordiv/fan.hpp"
#include "tordiv/isotropic.hpp"

namespace fixtures {

/// U + U + <2>, basis (e1, f1, e2, f2, v).
tordiv::EvenLattice siegel_lattice();

/// I = Z e1, K basis lifted as (v, e2, f2), cone reference -e2 + f2.
tordiv::Rank1CuspData siegel_rank1();

/// J = span(e1, e2).
tordiv::Rank2CuspData siegel_rank2();

/// Fan of the Siegel cusp in the traceless-matrix model of K: translates of sigma,
/// or of sigma~ (tau plus the inner ray) when refined.
tordiv::FanByOrbits siegel_fan(bool refined);

/// Lattice of signature (n, 2) from a list of block Gram matrices.
tordiv::EvenLattice blocks(const std::vector<tordiv::IntMatrix>& parts, const std::string& label);

tordiv::IntMatrix U(long scale = 1);

/// Rank 1 and rank 2 quotients of assorted lattices with |Delta_L| <= 16.
std::vector<tordiv::IsotropicQuotient> test_quotients();
std::vector<tordiv::Rank1CuspData> test_rank1();
std::vector<tordiv::Rank2CuspData> test_rank2();

} // namespace fixtures
