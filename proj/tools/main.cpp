#include <iostream>

#include "CLI11.hpp"
#include "tordiv/commands.hpp"

using namespace tordiv;

namespace {

Json mu_arg(const std::string& s)
{
    try {
        Json j = Json::parse(s);
        if (j.is_number_integer() || j.is_array()) {
            return j;
        }
    } catch (const Json::exception&) {
    }
    throw InvalidInput("--mu must be an index or a JSON list such as [1], got " + s);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Toroidal boundary multiplicities and Borcherds product divisors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GlobalOptions g;
    std::string out_dir, precision;
    int word_bound = 0;
    app.add_option("--out", out_dir, "Directory for JSON reports");
    app.add_option("--seed", g.seed, "Seed for sampling")->capture_default_str();
    app.add_option("--samples", g.samples, "Coverage samples for fan-check")->capture_default_str();
    app.add_option("--word-bound", word_bound, "Word length bound for group searches (default: from the fan file)");
    app.add_option("--precision", precision, "q-expansion precision for the theta checks of selftest");

    std::string lattice_path;
    auto* info = app.add_subcommand("lattice-info", "Signature and discriminant form of a lattice");
    info->add_option("lattice", lattice_path, "Lattice file")->required();

    std::string fan_path;
    auto* fan = app.add_subcommand("fan-check", "Validate a fan given by orbit representatives");
    fan->add_option("fan", fan_path, "Fan file")->required();

    std::string ws_path, m_str, mu_str, cusp, ray;
    std::vector<std::string> constants;
    auto* mult = app.add_subcommand("multiplicity", "Boundary multiplicities of Z^tor(m, mu)");
    mult->add_option("workspace", ws_path, "Workspace file")->required();
    mult->add_option("--m", m_str, "Positive rational m, congruent to q(mu)")->required();
    mult->add_option("--mu", mu_str, "Index or element (JSON list) of the discriminant group")->required();
    mult->add_option("--cusp", cusp, "Only this cusp label");
    mult->add_option("--ray", ray, "Only this inner ray orbit label");
    mult->add_option("--constant", constants, "Constant term of F_{m,mu} as nu=value (repeatable)");

    std::string pp_path;
    auto* bor = app.add_subcommand("borcherds", "Divisor of the Borcherds product of F and the Serre relation");
    bor->add_option("workspace", ws_path, "Workspace file")->required();
    bor->add_option("principal_part", pp_path, "Principal part file")->required();

    bool quick = false;
    std::string perturb = "0";
    auto* self = app.add_subcommand("selftest", "Oracle checks");
    self->add_flag("--quick", quick, "Skip the numeric checks");
    self->add_option("--perturb-theta", perturb, "Test hook: perturb a theta coefficient by this rational");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    return run_guarded(
        [&]() -> int {
            if (!out_dir.empty()) {
                g.out = out_dir;
            }
            if (word_bound != 0) {
                if (word_bound < 1) {
                    throw InvalidInput("--word-bound must be positive");
                }
                g.word_bound = word_bound;
            }
            if (!precision.empty()) {
                g.precision = parse_rational(Json(precision));
                if (*g.precision <= 0) {
                    throw InvalidInput("--precision must be positive");
                }
            }
            if (*info) {
                return cmd_lattice_info(g, lattice_path, std::cout);
            }
            if (*fan) {
                return cmd_fan_check(g, fan_path, std::cout);
            }
            if (*mult) {
                MultiplicityArgs a;
                a.m = parse_rational(Json(m_str));
                a.mu = mu_arg(mu_str);
                if (!cusp.empty()) {
                    a.cusp = cusp;
                }
                if (!ray.empty()) {
                    a.ray = ray;
                }
                if (!constants.empty()) {
                    a.constants.emplace();
                    for (const auto& c : constants) {
                        const auto eq = c.find('=');
                        if (eq == std::string::npos) {
                            throw InvalidInput("--constant expects nu=value, got " + c);
                        }
                        const auto nu = to_long(parse_integer(Json(c.substr(0, eq))));
                        if (nu < 0) {
                            throw InvalidInput("--constant: negative index");
                        }
                        (*a.constants)[static_cast<std::size_t>(nu)] = parse_rational(Json(c.substr(eq + 1)));
                    }
                }
                return cmd_multiplicity(g, ws_path, a, std::cout);
            }
            if (*bor) {
                return cmd_borcherds(g, ws_path, pp_path, std::cout);
            }
            return cmd_selftest(g, quick, parse_rational(Json(perturb)), std::cout);
        },
        std::cerr);
}
