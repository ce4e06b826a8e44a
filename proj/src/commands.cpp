#include "tordiv/commands.hpp"

#include <iostream>

#include "tordiv/selftest.hpp"

namespace tordiv {

namespace fs = std::filesystem;

namespace {

Json header(const GlobalOptions& g, const std::string& command, const std::vector<InputRecord>& inputs)
{
    Json in = Json::array();
    for (const auto& r : inputs) {
        in.push_back(Json{{"path", r.path}, {"sha256", r.sha256}});
    }
    return Json{{"tool", "tordiv"}, {"version", kToolVersion}, {"command", command}, {"seed", g.seed}, {"inputs", in}};
}

void emit(const GlobalOptions& g, const std::string& name, const Json& report, std::ostream& out)
{
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (g.out) {
        write_atomic(*g.out / (name + ".json"), text);
    }
}

Json signature_json(const Signature& s) { return Json::array({s.positive, s.negative}); }

Json cone_json(const RationalCone& c)
{
    Json gens = Json::array();
    for (const auto& v : c.generators) {
        gens.push_back(to_json(v));
    }
    return Json{{"label", c.label}, {"generators", gens}};
}

Json ray_json(const RayDatum& r)
{
    Json j{{"omega", to_json(r.omega)}, {"isotropic", r.isotropic}, {"orbit", r.orbit_label}};
    if (!r.isotropic) {
        j["N"] = to_json(r.N);
    }
    return j;
}

} // namespace

int run_guarded(const std::function<int()>& body, std::ostream& err)
{
    try {
        return body();
    } catch (const InvalidInput& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const ComputationRefused& e) {
        err << "error: computation refused: " << e.what() << "\n";
        return 1;
    } catch (const PrecisionError& e) {
        err << "error: insufficient precision: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_lattice_info(const GlobalOptions& g, const fs::path& path, std::ostream& out)
{
    const std::vector<InputRecord> inputs{{path.string(), sha256_file(path)}};
    const EvenLattice L = lattice_from_json(read_json(path));
    const auto& disc = L.discriminant();
    Json elements = Json::array();
    for (std::size_t i = 0; i < disc.order(); ++i) {
        elements.push_back(Json{{"index", i}, {"element", element_json(disc, i)}, {"q", to_json(disc.q(disc.element(i)))}});
    }
    Json report = header(g, "lattice-info", inputs);
    report["lattice"] = Json{{"label", L.label()},
                             {"rank", L.rank()},
                             {"signature", signature_json(L.signature())},
                             {"even", true},
                             {"determinant", to_json(L.determinant())}};
    report["discriminant"] = Json{{"order", disc.order()},
                                  {"cyclic_orders", disc.cyclic_orders()},
                                  {"level", to_json(disc.level())},
                                  {"elements", elements}};
    emit(g, "lattice-info", report, out);
    return 0;
}

int cmd_fan_check(const GlobalOptions& g, const fs::path& path, std::ostream& out)
{
    const std::vector<InputRecord> inputs{{path.string(), sha256_file(path)}};
    FanByOrbits fan = fan_from_json(read_json(path));
    if (g.word_bound) {
        fan.word_bound = *g.word_bound;
    }
    Json report = header(g, "fan-check", inputs);
    report["word_bound"] = fan.word_bound;
    report["samples"] = g.samples;
    try {
        fan.validate();
    } catch (const InvalidInput& e) {
        report["valid"] = false;
        report["error"] = e.what();
        emit(g, "fan-check", report, out);
        return 2;
    }
    report["valid"] = true;

    const GroupBall ball = group_ball(fan, fan.word_bound);
    report["group_ball_size"] = ball.elements.size();

    const AdmissibilityReport adm = admissibility_report(fan, g.samples, g.seed);
    report["admissibility"] = Json{{"invariance", adm.invariance},
                                   {"coverage", adm.coverage},
                                   {"boundary", adm.boundary},
                                   {"samples", adm.samples},
                                   {"failures", adm.failures}};

    const RayClassification rays = ray_classify(fan, ball);
    Json rj = Json::array();
    for (const auto& r : rays.rays) {
        rj.push_back(ray_json(r));
    }
    report["rays"] = rj;
    report["ray_violations"] = rays.violations;

    // Stabilizers of every orbit of faces of the representatives.
    std::vector<RationalCone> all;
    for (const auto& c : fan.cones) {
        for (auto& f : faces(c)) {
            if (!f.generators.empty()) {
                all.push_back(std::move(f));
            }
        }
    }
    const OrbitPartition orbits = orbit_classify(all, ball);
    Json stabs = Json::array();
    for (std::size_t k = 0; k < orbits.representatives.size(); ++k) {
        RationalCone rep = all[orbits.representatives[k]];
        for (const auto& c : fan.cones) {
            if (c.key() == rep.key()) {
                rep.label = c.label;
            }
        }
        const Stabilizer s = stabilizer(rep, ball);
        Json sj = cone_json(rep);
        sj["dim"] = cone_dim(rep);
        sj["orbit"] = orbits.labels[k];
        sj["smooth"] = is_smooth(rep);
        sj["stabilizer_order"] = s.order;
        sj["stabilizer_closed"] = s.closed;
        stabs.push_back(sj);
    }
    report["stabilizers"] = stabs;

    const bool ok = adm.ok() && rays.violations.empty();
    report["pass"] = ok;
    emit(g, "fan-check", report, out);
    return ok ? 0 : 2;
}

int cmd_multiplicity(const GlobalOptions& g, const fs::path& workspace, const MultiplicityArgs& a, std::ostream& out)
{
    std::vector<InputRecord> inputs;
    CompactificationDatum datum = load_workspace(workspace, inputs);
    const auto& disc = datum.lattice.discriminant();
    const std::size_t mu = mu_from_json(a.mu, disc);
    DivisorKey::Z(disc, a.m, mu);

    if (a.cusp) {
        std::erase_if(datum.rank2, [&](const Rank2CuspData& r) { return r.label != *a.cusp; });
        std::erase_if(datum.rank1, [&](const Rank1Cusp& r) { return r.data.label != *a.cusp; });
        if (datum.rank1.empty() && datum.rank2.empty()) {
            throw InvalidInput("no cusp labelled " + *a.cusp);
        }
    }
    if (a.ray) {
        datum.rank2.clear();
        bool found = false;
        for (auto& c : datum.rank1) {
            std::erase_if(c.inner_rays, [&](const RayDatum& r) { return r.orbit_label != *a.ray; });
            found = found || !c.inner_rays.empty();
        }
        if (!found) {
            throw InvalidInput("no inner ray orbit labelled " + *a.ray);
        }
    }

    const FormalDivisor z = ztor_divisor(datum, a.m, mu, a.constants);

    Json report = header(g, "multiplicity", inputs);
    report["m"] = to_json(a.m);
    report["mu"] = mu;
    report["mu_element"] = element_json(disc, mu);
    Json mj = Json::array();
    for (const auto& r2 : datum.rank2) {
        mj.push_back(Json{{"cusp", r2.label}, {"value", to_json(z.coefficient(DivisorKey::BJ(r2.label)))}});
    }
    report["mult_J"] = mj;
    Json mi = Json::array();
    for (const auto& c : datum.rank1) {
        for (const auto& r : c.inner_rays) {
            Json e = ray_json(r);
            e["cusp"] = c.data.label;
            e["value"] = to_json(z.coefficient(DivisorKey::BIomega(c.data.label, r.orbit_label)));
            mi.push_back(e);
        }
    }
    report["mult_I_omega"] = mi;
    report["ztor"] = to_json(z, disc);
    Json assumptions = Json::array({"the listed cusps and inner rays are complete sets of representatives"});
    if (!mi.empty()) {
        assumptions.push_back("the relevant cusp form space is trivial (cusp_space_trivial), so the Petersson term is omitted");
        assumptions.push_back("G_N^+ is the built-in class number series unless overridden; another choice may shift B_I,omega coefficients");
    }
    if (!a.constants && !mi.empty()) {
        assumptions.push_back("constant terms of F_{m,mu} are carried as symbols");
    }
    report["assumptions"] = assumptions;
    emit(g, "multiplicity", report, out);
    return 0;
}

int cmd_borcherds(const GlobalOptions& g, const fs::path& workspace, const fs::path& pp, std::ostream& out)
{
    std::vector<InputRecord> inputs;
    const CompactificationDatum datum = load_workspace(workspace, inputs);
    const auto& disc = datum.lattice.discriminant();
    inputs.push_back({pp.string(), sha256_file(pp)});
    const PrincipalPart F = principal_part_from_json(read_json(pp), disc);

    const BorcherdsDivisor bd = borcherds_divisor(datum, F);
    const FormalDivisor rel = serre_relation(datum, F);

    Json report = header(g, "borcherds", inputs);
    report["weight"] = to_json(bd.weight);
    report["terms"] = to_json(bd.divisor, disc);
    Json assumptions = Json::array();
    for (const auto& s : bd.assumptions) {
        assumptions.push_back(s);
    }
    bool has_inner = false;
    for (const auto& c : datum.rank1) {
        has_inner = has_inner || !c.inner_rays.empty();
    }
    if (has_inner) {
        assumptions.push_back("G_N^+ is the built-in class number series unless overridden; another choice may shift B_I,omega coefficients");
    }
    report["assumptions"] = assumptions;
    report["serre_relation"] = Json{{"terms", to_json(rel, disc)}, {"equals_twice_divisor", true}};
    emit(g, "borcherds", report, out);
    return 0;
}

int cmd_selftest(const GlobalOptions& g, bool quick, const Rational& perturb, std::ostream& out)
{
    SelftestOptions opts;
    opts.quick = quick;
    opts.seed = g.seed;
    if (g.precision) {
        opts.theta_precision = *g.precision;
    }
    opts.theta_perturbation = perturb;
    const auto checks = run_selftest(opts);
    bool ok = true;
    Json rows = Json::array();
    for (const auto& c : checks) {
        const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
        out << status << "  " << c.name << "  (" << c.detail << ")\n";
        ok = ok && (c.skipped || c.passed);
        rows.push_back(Json{{"check", c.name}, {"status", status}, {"detail", c.detail}});
    }
    if (g.out) {
        Json report = header(g, "selftest", {});
        report["checks"] = rows;
        report["pass"] = ok;
        write_atomic(*g.out / "selftest.json", report.dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

} // namespace tordiv
