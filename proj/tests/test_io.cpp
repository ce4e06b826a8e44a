#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "tordiv/commands.hpp"
#include "tordiv/io.hpp"

using namespace tordiv;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = TORDIV_DATA_DIR;

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("tordiv-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("scalar parsing and serialization")
    {
        CHECK(parse_rational(Json(3)) == 3);
        CHECK(parse_rational(Json("-5/10")) == Rational(-1, 2));
        CHECK(parse_rational(Json::array({7, 4})) == Rational(7, 4));
        CHECK(parse_rational(Json("123456789012345678901234567890")) == Rational(Integer("123456789012345678901234567890")));
        CHECK_THROWS_AS(parse_rational(Json("1/0")), InvalidInput);
        CHECK_THROWS_AS(parse_rational(Json::array({1, 0})), InvalidInput);
        CHECK_THROWS_AS(parse_rational(Json(0.5)), InvalidInput);
        CHECK(to_json(Rational(-3, 6)) == Json::array({-1, 2}));
        CHECK(to_json(Integer("123456789012345678901234567890")) == Json("123456789012345678901234567890"));
        CHECK(to_json(LinearForm(Rational(2))) == Json::array({2, 1}));
        const Json lf = to_json(LinearForm::symbol("c(0,0)", Rational(-1, 12)) + Rational(5));
        CHECK(lf["constant"] == Json::array({5, 1}));
        CHECK(lf["symbols"]["c(0,0)"] == Json::array({-1, 12}));
        CHECK_THROWS_AS(parse_int_matrix(Json::parse("[[1, 2], [3]]")), InvalidInput);
    }

    TEST_CASE("hashing and atomic writes")
    {
        CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        const fs::path dir = scratch("atomic");
        write_atomic(dir / "sub" / "r.json", "{\"a\": 1}\n");
        CHECK(read_json(dir / "sub" / "r.json")["a"] == 1);
        write_atomic(dir / "sub" / "r.json", "{\"a\": 2}\n");
        CHECK(read_json(dir / "sub" / "r.json")["a"] == 2);
        std::size_t files = 0;
        for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "sub")) {
            ++files;
        }
        CHECK(files == 1);
        CHECK_THROWS_AS(read_json(dir / "missing.json"), InvalidInput);
    }

    TEST_CASE("file formats")
    {
        const EvenLattice L = lattice_from_json(read_json(data_dir / "siegel" / "lattice.json"));
        CHECK(L.gram() == fixtures::siegel_lattice().gram());
        CHECK_THROWS_AS(lattice_from_json(read_json(data_dir / "misc" / "odd.json")), InvalidInput);

        const auto r1 = rank1_from_file(L, cusp_from_json(read_json(data_dir / "siegel" / "cusp_I.json")));
        CHECK(r1.K().gram() == fixtures::siegel_rank1().K().gram());
        CHECK(r1.cone_reference == fixtures::siegel_rank1().cone_reference);
        const auto cj = cusp_from_json(read_json(data_dir / "siegel" / "cusp_J.json"));
        CHECK_THROWS_AS(rank1_from_file(L, cj), InvalidInput);
        CHECK(rank2_from_file(L, cj).D().gram() == fixtures::siegel_rank2().D().gram());

        const FanByOrbits fan = fan_from_json(read_json(data_dir / "siegel" / "fan_sigma.json"));
        const FanByOrbits ref = fixtures::siegel_fan(false);
        CHECK(fan.gram == ref.gram);
        CHECK(fan.group_generators == ref.group_generators);
        CHECK(fan.cones[0].key() == ref.cones[0].key());

        const auto& disc = L.discriminant();
        const PrincipalPart F = principal_part_from_json(read_json(data_dir / "siegel" / "principal_e7.json"), disc);
        CHECK(F.negative.at({0, 1}) == 1);
        CHECK(F.negative.at({1, Rational(1, 4)}) == 56);
        CHECK(F.constant(0) == 630);
        CHECK_THROWS_AS(principal_part_from_json(Json::parse(R"({"negative": [[0, 1, 2, 1]]})"), disc), InvalidInput);
        CHECK_THROWS_AS(principal_part_from_json(Json::parse(R"({"negative": [[1, 1, 4, "1/2"]]})"), disc),
                        InvalidInput);
        CHECK_THROWS_AS(principal_part_from_json(Json::parse(R"({"constant": [[1, 3]]})"), disc), InvalidInput);
        const PrincipalPart Fe = principal_part_from_json(
            Json::parse(R"({"negative": [[[1], 1, 4, 2]], "extended": [[0, 1, 1, "3/2"]], "extended_precision": 2})"),
            disc);
        CHECK(Fe.negative.at({1, Rational(1, 4)}) == 2);
        CHECK(!Fe.constants.has_value());
        CHECK(Fe.extended.at({0, 1}) == Rational(3, 2));

        const Json g = Json::parse(R"({"denominator": 12, "precision": 2, "floor": 0,
            "components": [{"element": [0], "terms": [[0, -1, 12], [12, 1, 2]]}, {"element": [-1], "terms": [[11, 1, 1]]}]})");
        const VVQExpansion gp = g_plus_from_json(g, 3);
        CHECK(gp.dim() == 6);
        CHECK(gp.coefficient(0, 0) == Rational(-1, 12));
        CHECK(gp.coefficient(1, 0) == Rational(1, 2));
        CHECK(gp.coefficient(Rational(11, 12), 5) == 1);
    }

    TEST_CASE("workspaces")
    {
        std::vector<InputRecord> inputs;
        const auto d = load_workspace(data_dir / "siegel" / "workspace_refined.json", inputs);
        CHECK(inputs.size() == 5);
        CHECK(d.rank1.size() == 1);
        CHECK(d.rank2.size() == 1);
        REQUIRE(d.rank1[0].inner_rays.size() == 1);
        CHECK(d.rank1[0].inner_rays[0].N == 3);
        CHECK(d.cusp_space_trivial);
        for (const auto& r : inputs) {
            CHECK(r.sha256 == sha256_file(r.path));
        }

        const fs::path dir = scratch("ws");
        std::ofstream(dir / "ws.json") << R"({"lattice": {"label": "x", "gram": [[2, 1], [1, 2]]}})";
        std::vector<InputRecord> in2;
        CHECK_THROWS_AS(load_workspace(dir / "ws.json", in2), InvalidInput);
        std::ofstream(dir / "ws2.json") << R"({"lattice": {"label": "x", "gram": [[0, 1, 0], [1, 0, 0], [0, 0, -2]]},
            "rank2_cusps": [{"lattice": "y", "z": [1, 0, 0], "w": [0, 1, 0]}]})";
        CHECK_THROWS_AS(load_workspace(dir / "ws2.json", in2), InvalidInput);
    }

    TEST_CASE("commands")
    {
        GlobalOptions g;
        g.out = scratch("cmd");
        std::ostringstream out, err;

        CHECK(cmd_lattice_info(g, data_dir / "siegel" / "lattice.json", out) == 0);
        Json info = read_json(*g.out / "lattice-info.json");
        CHECK(info["lattice"]["signature"] == Json::array({3, 2}));
        CHECK(info["discriminant"]["order"] == 2);
        CHECK(info["discriminant"]["elements"][1]["q"] == Json::array({1, 4}));
        CHECK(info["inputs"][0]["sha256"] == sha256_file(data_dir / "siegel" / "lattice.json"));
        CHECK(cmd_lattice_info(g, data_dir / "misc" / "u_plus_u.json", out) == 0);
        CHECK(read_json(*g.out / "lattice-info.json")["discriminant"]["order"] == 1);
        CHECK(run_guarded([&] { return cmd_lattice_info(g, data_dir / "misc" / "odd.json", out); }, err) == 2);

        CHECK(cmd_fan_check(g, data_dir / "siegel" / "fan_sigma.json", out) == 0);
        Json fc = read_json(*g.out / "fan-check.json");
        std::map<std::string, long> orders;
        for (const auto& s : fc["stabilizers"]) {
            orders[s["label"].get<std::string>()] = s["stabilizer_order"].get<long>();
        }
        CHECK(orders["sigma"] == 3);
        CHECK(orders["sigma[01]"] == 2);
        CHECK(run_guarded([&] { return cmd_fan_check(g, data_dir / "misc" / "fan_overlap.json", out); }, err) == 2);

        MultiplicityArgs a;
        a.m = 1;
        a.mu = 0;
        CHECK(cmd_multiplicity(g, data_dir / "siegel" / "workspace_sigma.json", a, out) == 0);
        Json mr = read_json(*g.out / "multiplicity.json");
        CHECK(mr["mult_J"][0]["value"] == Json::array({4, 1}));
        a.m = 2;
        CHECK(cmd_multiplicity(g, data_dir / "siegel" / "workspace_sigma.json", a, out) == 0);
        CHECK(read_json(*g.out / "multiplicity.json")["mult_J"][0]["value"] == Json::array({0, 1}));
        a.m = 1;
        CHECK(run_guarded([&] { return cmd_multiplicity(g, data_dir / "misc" / "workspace_composite.json", a, out); },
                          err) == 1);
        CHECK(err.str().find("override") != std::string::npos);
        a.cusp = "J";
        CHECK(run_guarded([&] { return cmd_multiplicity(g, data_dir / "misc" / "workspace_composite.json", a, out); },
                          err) == 0);

        CHECK(cmd_borcherds(g, data_dir / "siegel" / "workspace_refined.json", data_dir / "siegel" / "principal_e7.json",
                            out) == 0);
        Json br = read_json(*g.out / "borcherds.json");
        CHECK(br["weight"] == Json::array({315, 1}));
        CHECK(br["terms"].size() == 4);
        CHECK(br["serre_relation"]["terms"].size() == 4);
        CHECK(cmd_borcherds(g, data_dir / "siegel" / "workspace_refined.json",
                            data_dir / "siegel" / "principal_zero.json", out) == 0);
        br = read_json(*g.out / "borcherds.json");
        CHECK(br["weight"] == Json::array({0, 1}));
        CHECK(br["terms"].empty());
        std::ostringstream err2;
        CHECK(run_guarded(
                  [&] {
                      return cmd_borcherds(g, data_dir / "misc" / "workspace_u4.json",
                                           data_dir / "misc" / "principal_asymmetric.json", out);
                  },
                  err2) == 2);
        CHECK(err2.str().find("not symmetric") != std::string::npos);
    }

    TEST_CASE("selftest command")
    {
        GlobalOptions g;
        std::ostringstream out;
        CHECK(cmd_selftest(g, true, 0, out) == 0);
        CHECK(out.str().find("SKIP") != std::string::npos);
        CHECK(cmd_selftest(g, false, Rational(1, 1000), out) == 1);
    }
}
