#pragma once

// Built-in oracle checks: naive short vectors, reduced-form class numbers and
// theta modularity at sample points.

#include <cstdint>
#include <string>
#include <vector>

#include "tordiv/numeric.hpp"

namespace tordiv {

struct SelftestCheck {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

struct SelftestOptions {
    bool quick = false;              // skip the floating-point checks
    std::uint64_t seed = 1;
    Rational theta_precision = 40;
    Rational theta_perturbation = 0; // test hook: added to a theta coefficient
};

std::vector<SelftestCheck> run_selftest(const SelftestOptions& opts);

} // namespace tordiv
