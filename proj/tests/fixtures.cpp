#include "fixtures.hpp"

namespace fixtures {

using namespace tordiv;

IntMatrix U(long scale) { return int_matrix({{0, scale}, {scale, 0}}); }

EvenLattice blocks(const std::vector<IntMatrix>& parts, const std::string& label)
{
    std::vector<EvenLattice> ls;
    for (const auto& p : parts) {
        ls.emplace_back(p, "");
    }
    return EvenLattice::direct_sum(ls, label);
}

EvenLattice siegel_lattice() { return blocks({U(), U(), int_matrix({{2}})}, "siegel"); }

Rank1CuspData siegel_rank1()
{
    IntMatrix kb(5, 3);
    kb.col(0) = int_vector({0, 0, 0, 0, 1});
    kb.col(1) = int_vector({0, 0, 1, 0, 0});
    kb.col(2) = int_vector({0, 0, 0, 1, 0});
    return rank1_data(siegel_lattice(), int_vector({1, 0, 0, 0, 0}), int_vector({0, 0, -1, 1, 0}), kb, "I");
}

Rank2CuspData siegel_rank2()
{
    return rank2_data(siegel_lattice(), int_vector({1, 0, 0, 0, 0}), int_vector({0, 0, 1, 0, 0}), std::nullopt, "J");
}

FanByOrbits siegel_fan(bool refined)
{
    FanByOrbits f;
    f.lattice_label = "K";
    f.gram = int_matrix({{2, 0, 0}, {0, 0, 1}, {0, 1, 0}});
    f.cone_reference = int_vector({0, -4, 1});
    f.group_generators = {traceless_conjugation(int_matrix({{1, 1}, {0, 1}})),
                          traceless_conjugation(int_matrix({{0, -1}, {1, 0}}))};
    f.isotropic_rays = {int_vector({0, -1, 0})};
    const IntVector third = refined ? int_vector({1, -2, 2}) : int_vector({1, -1, 1});
    f.cones = {make_cone({int_vector({0, -1, 0}), int_vector({0, 0, 1}), third}, refined ? "sigma~" : "sigma", 3)};
    return f;
}

std::vector<Rank1CuspData> test_rank1()
{
    std::vector<Rank1CuspData> out;
    out.push_back(siegel_rank1());
    out.push_back(rank1_data(siegel_lattice(), int_vector({1, -1, 0, 0, 1})));
    auto a = blocks({U(2), U(), int_matrix({{2}})}, "U(2)+U+<2>");
    out.push_back(rank1_data(a, int_vector({1, 0, 0, 0, 0})));
    out.push_back(rank1_data(a, int_vector({0, 0, 1, 0, 0})));
    auto b = blocks({U(), U(2), int_matrix({{4}})}, "U+U(2)+<4>");
    out.push_back(rank1_data(b, int_vector({0, 0, 1, 0, 0})));
    out.push_back(rank1_data(b, int_vector({0, 0, 1, -1, 1})));
    auto c = blocks({U(), U(), int_matrix({{2, 1}, {1, 2}})}, "U+U+A2");
    out.push_back(rank1_data(c, int_vector({1, 0, 0, 0, 0, 0})));
    auto d = blocks({U(), U(), int_matrix({{2, 0}, {0, 2}})}, "U+U+<2>+<2>");
    out.push_back(rank1_data(d, int_vector({1, 0, 0, 0, 0, 0})));
    out.push_back(rank1_data(d, int_vector({1, -1, 0, 0, 1, 0})));
    return out;
}

std::vector<Rank2CuspData> test_rank2()
{
    std::vector<Rank2CuspData> out;
    out.push_back(siegel_rank2());
    auto a = blocks({U(2), U(), int_matrix({{2}})}, "U(2)+U+<2>");
    out.push_back(rank2_data(a, int_vector({1, 0, 0, 0, 0}), int_vector({0, 0, 1, 0, 0})));
    out.push_back(rank2_data(a, int_vector({0, 1, 0, 0, 0}), int_vector({0, 0, 0, 1, 0})));
    auto b = blocks({U(), U(2), int_matrix({{4}})}, "U+U(2)+<4>");
    out.push_back(rank2_data(b, int_vector({1, 0, 0, 0, 0}), int_vector({0, 0, 1, 0, 0})));
    auto c = blocks({U(), U(), int_matrix({{2, 1}, {1, 2}})}, "U+U+A2");
    out.push_back(rank2_data(c, int_vector({1, 0, 0, 0, 0, 0}), int_vector({0, 0, 1, 0, 0, 0})));
    auto d = blocks({U(), U(), int_matrix({{2, 0}, {0, 2}})}, "U+U+<2>+<2>");
    out.push_back(rank2_data(d, int_vector({1, 0, 0, 0, 0, 0}), int_vector({0, 0, 1, 0, 0, 0})));
    auto e = blocks({U(2), U(2), int_matrix({{2}})}, "U(2)+U(2)+<2>");
    out.push_back(rank2_data(e, int_vector({1, 0, 0, 0, 0}), int_vector({0, 0, 1, 0, 0})));
    out.push_back(rank2_data(e, int_vector({1, 0, 0, 0, 0}), int_vector({0, 0, 0, 1, 0})));
    return out;
}

std::vector<IsotropicQuotient> test_quotients()
{
    std::vector<IsotropicQuotient> out;
    for (const auto& r : test_rank1()) {
        out.push_back(r.quotient);
    }
    for (const auto& r : test_rank2()) {
        out.push_back(r.quotient);
    }
    return out;
}

} // namespace fixtures
