#include <random>
#include <set>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracles.hpp"
#include "tordiv/lattice.hpp"

using namespace tordiv;

namespace {

std::set<std::vector<Rational>> as_set(const std::vector<RatVector>& vs)
{
    std::set<std::vector<Rational>> out;
    for (const auto& v : vs) {
        out.insert(std::vector<Rational>(v.data(), v.data() + v.size()));
    }
    return out;
}

EvenLattice siegel_lattice()
{
    auto u = EvenLattice::hyperbolic_plane();
    return EvenLattice::direct_sum({u, u, EvenLattice::diagonal({2})}, "siegel");
}

} // namespace

TEST_SUITE("lattice-core")
{
    TEST_CASE("smith normal form examples")
    {
        CHECK(smith_normal_form(int_matrix({{2, 0}, {0, 2}})).D == int_matrix({{2, 0}, {0, 2}}));
        CHECK(smith_normal_form(int_matrix({{0, 1}, {1, 0}})).D == int_matrix({{1, 0}, {0, 1}}));
        auto sf = smith_normal_form(int_matrix({{2, 4}, {4, 2}}));
        CHECK(sf.D == int_matrix({{2, 0}, {0, 6}}));
        CHECK(sf.U * int_matrix({{2, 4}, {4, 2}}) * sf.V == sf.D);
    }

    TEST_CASE("smith normal form on random rectangular matrices")
    {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> dim(1, 5), entry(-6, 6);
        for (int t = 0; t < 200; ++t) {
            const int r = dim(rng), c = dim(rng);
            IntMatrix m(r, c);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < c; ++j) {
                    m(i, j) = entry(rng);
                }
            }
            auto sf = smith_normal_form(m);
            REQUIRE(sf.U * m * sf.V == sf.D);
            CHECK(abs(determinant(sf.U)) == 1);
            CHECK(abs(determinant(sf.V)) == 1);
            auto f = sf.invariant_factors();
            for (std::size_t i = 0; i < f.size(); ++i) {
                CHECK(f[i] >= 0);
                for (int a = 0; a < r; ++a) {
                    for (int b = 0; b < c; ++b) {
                        if (a != b) {
                            CHECK(sf.D(a, b) == 0);
                        }
                    }
                }
                if (i + 1 < f.size() && f[i] != 0) {
                    CHECK(f[i + 1] % f[i] == 0);
                }
                if (f[i] == 0 && i + 1 < f.size()) {
                    CHECK(f[i + 1] == 0);
                }
            }
        }
    }

    TEST_CASE("hermite normal form")
    {
        auto id = hermite_normal_form(IntMatrix::Identity(3, 3));
        CHECK(id.H == IntMatrix::Identity(3, 3));
        CHECK(hermite_normal_form(int_matrix({{2, 4}})).H == int_matrix({{2, 4}}));

        IntMatrix m = int_matrix({{4, 6}, {2, 4}});
        auto hf = hermite_normal_form(m);
        CHECK(hf.U * m == hf.H);
        CHECK(abs(determinant(hf.U)) == 1);
        CHECK(hf.H(1, 0) == 0);
        CHECK(hf.H(0, 0) > 0);
        CHECK(hf.H(1, 1) > 0);
        CHECK(hf.H(0, 1) >= 0);
        CHECK(hf.H(0, 1) < hf.H(1, 1));
        // Same row lattice: every small combination of rows of m lies in the row span of H and back.
        for (int a = -4; a <= 4; ++a) {
            for (int b = -4; b <= 4; ++b) {
                IntVector v = (Integer(a) * m.row(0) + Integer(b) * m.row(1)).transpose();
                CHECK(solve_integer(hf.H.transpose(), v).has_value());
                IntVector w = (Integer(a) * hf.H.row(0) + Integer(b) * hf.H.row(1)).transpose();
                CHECK(solve_integer(m.transpose(), w).has_value());
            }
        }
    }

    TEST_CASE("integer kernel and basis completion")
    {
        IntMatrix m = int_matrix({{1, 2, 3}, {2, 4, 6}});
        IntMatrix k = integer_kernel(m);
        CHECK(k.cols() == 2);
        CHECK((m * k).isZero());
        CHECK(is_saturated(k));
        IntMatrix full = complete_to_basis(k);
        CHECK(abs(determinant(full)) == 1);
        CHECK(full.leftCols(2) == k);
        CHECK_THROWS(complete_to_basis(int_matrix({{2}, {0}})));
    }

    TEST_CASE("signature")
    {
        CHECK(gram_signature(EvenLattice::diagonal({2, 2, 2, -2, -2}).gram()) == Signature{3, 2});
        CHECK(gram_signature(int_matrix({{0, 1}, {1, 0}})) == Signature{1, 1});
        CHECK(siegel_lattice().signature() == Signature{3, 2});
        CHECK_THROWS_AS(gram_signature(int_matrix({{2, 2}, {2, 2}})), InvalidInput);
        CHECK(gram_signature(int_matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 3}, {0, 0, 3, 0}})) == Signature{2, 2});
    }

    TEST_CASE("signature agrees with floating eigenvalues on random grams")
    {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 100; ++t) {
            const int n = 1 + t % 5;
            IntMatrix g = oracle::random_even_symmetric(rng, n);
            Eigen::MatrixXd gd(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    gd(i, j) = g(i, j).convert_to<double>();
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gd);
            int p = 0, q = 0;
            for (int i = 0; i < n; ++i) {
                (es.eigenvalues()(i) > 0 ? p : q) += 1;
            }
            CHECK(gram_signature(g) == Signature{p, q});
        }
    }

    TEST_CASE("lattice validation")
    {
        CHECK_THROWS_AS(EvenLattice(int_matrix({{1}}), "odd"), InvalidInput);
        CHECK_THROWS_AS(EvenLattice(int_matrix({{2, 1}, {0, 2}}), "asym"), InvalidInput);
        CHECK_THROWS_AS(EvenLattice(int_matrix({{2, 2}, {2, 2}}), "degenerate"), InvalidInput);
        EvenLattice empty(IntMatrix(0, 0), "zero");
        CHECK(empty.rank() == 0);
        CHECK(empty.discriminant().order() == 1);
    }

    TEST_CASE("discriminant form examples")
    {
        auto u = EvenLattice::hyperbolic_plane();
        CHECK(EvenLattice::direct_sum({u, u}).discriminant().order() == 1);

        auto a1 = EvenLattice::diagonal({2});
        const auto& d = a1.discriminant();
        CHECK(d.cyclic_orders() == std::vector<long>{2});
        CHECK(d.q({1}) == Rational(1, 4));
        CHECK(d.lift({1})(0) == Rational(1, 2));

        const EvenLattice siegel = siegel_lattice();
        const auto& ds = siegel.discriminant();
        CHECK(ds.order() == 2);
        CHECK(ds.q({1}) == Rational(1, 4));
        CHECK(ds.q({0}) == 0);
    }

    TEST_CASE("discriminant form properties on random lattices")
    {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 60; ++t) {
            const int n = 1 + t % 5;
            IntMatrix g = oracle::random_even_symmetric(rng, n);
            EvenLattice lat(g, "random");
            const auto& d = lat.discriminant();
            CHECK(Integer(d.order()) == abs(determinant(g)));
            long prod = 1;
            for (std::size_t i = 0; i < d.cyclic_orders().size(); ++i) {
                prod *= d.cyclic_orders()[i];
                if (i + 1 < d.cyclic_orders().size()) {
                    CHECK(d.cyclic_orders()[i + 1] % d.cyclic_orders()[i] == 0);
                }
            }
            CHECK(static_cast<std::size_t>(prod) == d.order());
            if (n <= 3 && d.order() <= 40) {
                CHECK(oracle::brute_discriminant_order(g) == d.order());
            }
            if (d.order() > 100) {
                continue;
            }
            auto els = d.elements();
            for (const auto& x : els) {
                CHECK(d.reduce(d.lift(x)) == x);
                CHECK(d.index(x) < d.order());
                CHECK(d.element(d.index(x)) == x);
                bool witness = x == d.zero();
                for (const auto& y : els) {
                    CHECK(mod1(d.q(d.add(x, y)) - d.q(x) - d.q(y)) == d.b(x, y));
                    witness = witness || d.b(x, y) != 0;
                }
                CHECK(witness);
                CHECK(d.q(d.negate(x)) == d.q(x));
            }
        }
    }

    TEST_CASE("short vector examples")
    {
        RatMatrix g1 = to_rational(int_matrix({{2}}));
        auto sv = short_vectors(g1, Rational(1), RatVector::Zero(1));
        REQUIRE(sv.size() == 3);
        CHECK(sv[0].vector(0) == -1);
        CHECK(sv[1].vector(0) == 0);
        CHECK(sv[2].vector(0) == 1);
        CHECK(sv[0].norm == 2);
        CHECK(sv[1].norm == 0);

        RatVector half(1);
        half(0) = Rational(1, 2);
        auto sh = short_vectors(g1, Rational(9, 4), half);
        REQUIRE(sh.size() == 4);
        CHECK(sh[0].vector(0) == Rational(-3, 2));
        CHECK(sh[3].vector(0) == Rational(3, 2));

        auto a2 = short_vectors(int_matrix({{2, 1}, {1, 2}}), Rational(1), RatVector::Zero(2));
        CHECK(a2.size() == 7);
        int norm2 = 0;
        for (const auto& s : a2) {
            norm2 += s.norm == 2;
        }
        CHECK(norm2 == 6);

        CHECK_THROWS_AS(short_vectors(int_matrix({{2, 0}, {0, -2}}), Rational(1), RatVector::Zero(2)), InvalidInput);
        CHECK(short_vectors(IntMatrix(0, 0), Rational(3), RatVector(0)).size() == 1);
    }

    TEST_CASE("short vectors match the box oracle")
    {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> bound(0, 20);
        for (int t = 0; t < 40; ++t) {
            const int n = 1 + t % 4;
            IntMatrix g = oracle::random_even_positive(rng, n);
            EvenLattice lat(g, "pd");
            const auto& d = lat.discriminant();
            auto coset = d.element(static_cast<std::size_t>(t) % d.order());
            RatVector shift = d.lift(coset);
            Rational b = bound(rng);
            auto fast = short_vectors(g, b, shift);
            std::vector<RatVector> vs;
            for (std::size_t i = 0; i < fast.size(); ++i) {
                vs.push_back(fast[i].vector);
                if (i > 0) {
                    CHECK(lex_less(fast[i - 1].vector, fast[i].vector));
                }
            }
            CHECK(as_set(vs) == as_set(oracle::box_short_vectors(to_rational(g), b, shift)));
            CHECK(vs.size() == as_set(vs).size());
        }
    }

    TEST_CASE("coset representation counts")
    {
        auto a1 = EvenLattice::diagonal({2});
        CHECK(coset_representation_count(a1, {0}, Rational(1)) == 2);
        CHECK(coset_representation_count(a1, {0}, Rational(2)) == 0);
        CHECK(coset_representation_count(a1, {0}, Rational(0)) == 1);
        CHECK(coset_representation_count(a1, {1}, Rational(1, 4)) == 2);
        auto a2 = EvenLattice(int_matrix({{2, 1}, {1, 2}}), "A2");
        CHECK(coset_representation_count(a2, a2.discriminant().zero(), Rational(0)) == 1);

        std::mt19937_64 rng(3);
        for (int t = 0; t < 20; ++t) {
            EvenLattice lat(oracle::random_even_positive(rng, 1 + t % 3), "pd");
            for (int m = 1; m <= 5; ++m) {
                CHECK(coset_representation_count(lat, lat.discriminant().zero(), Rational(m)) % 2 == 0);
            }
        }
    }
}
