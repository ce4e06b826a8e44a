#pragma once

// CLI command implementations. Each returns the process exit code: 0 success,
// 1 computation refused or a failed self-test, 2 invalid input.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "tordiv/io.hpp"

namespace tordiv {

struct GlobalOptions {
    std::optional<std::filesystem::path> out;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
    std::optional<int> word_bound;
    std::optional<Rational> precision;
};

/// Runs a command, printing diagnostics for exceptions and mapping them to exit codes.
int run_guarded(const std::function<int()>& body, std::ostream& err);

int cmd_lattice_info(const GlobalOptions& g, const std::filesystem::path& lattice, std::ostream& out);
int cmd_fan_check(const GlobalOptions& g, const std::filesystem::path& fan, std::ostream& out);

struct MultiplicityArgs {
    Rational m;
    Json mu;                                             // index or element
    std::optional<std::string> cusp;                     // restrict to one cusp label
    std::optional<std::string> ray;                      // restrict to one ray orbit label
    std::optional<std::map<std::size_t, Rational>> constants; // c(nu, 0) of F_{m, mu}
};
int cmd_multiplicity(const GlobalOptions& g, const std::filesystem::path& workspace, const MultiplicityArgs& a,
                     std::ostream& out);
int cmd_borcherds(const GlobalOptions& g, const std::filesystem::path& workspace,
                  const std::filesystem::path& principal_part, std::ostream& out);
int cmd_selftest(const GlobalOptions& g, bool quick, const Rational& perturb, std::ostream& out);

} // namespace tordiv
