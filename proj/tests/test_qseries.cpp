#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tordiv/qseries.hpp"
#include "tordiv/weil.hpp"

using namespace tordiv;

namespace {

/// Independent count of lambda in K^*/Z omega by a coordinate box: lambda = G^{-1} a with
/// the class fixed by 0 <= (lambda, omega) < 2N.
std::map<std::pair<Rational, std::size_t>, long> box_theta_K_omega(const Rank1CuspData& r1, const IntVector& omega,
                                                                   const Rational& prec, long box)
{
    const EvenLattice& K = r1.K();
    const auto n = static_cast<Eigen::Index>(K.rank());
    const RatMatrix ginv = inverse(to_rational(K.gram()));
    const Integer norm = K.norm(omega);
    const long two_n = to_long(-norm);
    const auto& dk = K.discriminant();
    std::map<std::pair<Rational, std::size_t>, long> out;
    std::vector<long> a(static_cast<std::size_t>(n), -box);
    for (;;) {
        IntVector av(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            av(i) = a[static_cast<std::size_t>(i)];
        }
        const Integer s = av.dot(omega);
        if (s >= 0 && s < two_n) {
            const RatVector lam = ginv * to_rational(av);
            const RatVector perp = lam - to_rational(omega) * (Rational(s) / Rational(norm));
            const Rational e = K.norm(perp) / 2;
            if (e < prec) {
                const std::size_t idx = dk.index(dk.reduce(lam)) * static_cast<std::size_t>(two_n) +
                                        static_cast<std::size_t>(mod(-to_long(s), two_n));
                out[{e, idx}] += 1;
            }
        }
        Eigen::Index i = 0;
        while (i < n && a[static_cast<std::size_t>(i)] == box) {
            a[static_cast<std::size_t>(i)] = -box;
            ++i;
        }
        if (i == n) {
            break;
        }
        ++a[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace

TEST_SUITE("qseries-weil")
{
    TEST_CASE("expansion bookkeeping")
    {
        VVQExpansion a = VVQExpansion::scalar(4, Rational(-1), Rational(2));
        a.add_term(-1, 0, 1);
        a.add_term(0, 0, 5);
        a.add_term(1, 0, 1);
        a.add_term(Rational(9, 4), 0, 7); // above precision: dropped
        CHECK(constant_term(a) == 5);
        CHECK(a.terms().size() == 3);
        CHECK_THROWS_AS(a.coefficient(2), PrecisionError);
        CHECK_THROWS(a.add_term(Rational(1, 3), 0, 1));
        CHECK_THROWS(a.add_term(Rational(-2), 0, 1));

        VVQExpansion one = VVQExpansion::unit(1, 0, 5);
        CHECK(constant_term(one) == 1);
        VVQExpansion z = VVQExpansion::scalar(1, 0, 0);
        CHECK_THROWS_AS(constant_term(z), PrecisionError);

        // Precision of a product.
        VVQExpansion f = VVQExpansion::scalar(1, -1, 0);
        f.add_term(-1, 0, 1);
        VVQExpansion g = VVQExpansion::scalar(1, 0, 3);
        g.add_term(1, 0, 2);
        VVQExpansion p = pair(f, g);
        CHECK(p.precision() == 0);
        CHECK(p.floor() == -1);
        CHECK_THROWS_AS(constant_term(p), PrecisionError);
        VVQExpansion f2 = f;
        f2 = VVQExpansion::scalar(1, -1, 1);
        f2.add_term(-1, 0, 1);
        CHECK(constant_term(pair(f2, g)) == 2);
    }

    TEST_CASE("pairing, derivative and linearity")
    {
        VVQExpansion e0 = VVQExpansion::unit(2, 0, 10);
        VVQExpansion f(2, 1, -1, 1);
        f.add_term(-1, 0, 1);
        VVQExpansion pr = pair(e0, f);
        CHECK(pr.coefficient(-1) == 1);
        CHECK(pr.coefficient(0) == 0);

        auto a1 = EvenLattice::diagonal({2});
        VVQExpansion th = theta_definite(a1, 5);
        CHECK(constant_term(pair(th, f)) == 2);

        VVQExpansion c = VVQExpansion::unit(1, 0, 3);
        CHECK(q_d_dq(c).is_zero());
        VVQExpansion q14 = VVQExpansion::scalar(4, 0, 3);
        q14.add_term(Rational(1, 4), 0, 1);
        CHECK(q_d_dq(q14).coefficient(Rational(1, 4)) == Rational(1, 4));
        CHECK(q_d_dq(th).floor() == Rational(1, 4));

        std::mt19937_64 rng(9);
        std::uniform_int_distribution<int> coef(-5, 5);
        for (int t = 0; t < 20; ++t) {
            VVQExpansion x(2, 4, -1, 2), y(2, 4, -1, 2), z(2, 4, 0, 3);
            for (int k = -4; k < 8; ++k) {
                for (std::size_t j = 0; j < 2; ++j) {
                    x.add_term(Rational(k, 4), j, coef(rng));
                    y.add_term(Rational(k, 4), j, coef(rng));
                    if (k >= 0) {
                        z.add_term(Rational(k, 4), j, coef(rng));
                    }
                }
            }
            const Rational s = coef(rng);
            CHECK(pair(x + y.scaled(s), z) == pair(x, z) + pair(y, z).scaled(s));
            CHECK(q_d_dq(x + y) == q_d_dq(x) + q_d_dq(y));
            CHECK(constant_term(pair(x + y, z)) == constant_term(pair(x, z)) + constant_term(pair(y, z)));
        }
    }

    TEST_CASE("theta series of definite lattices")
    {
        EvenLattice zero(IntMatrix(0, 0), "0");
        VVQExpansion t0 = theta_definite(zero, 4);
        CHECK(t0.dim() == 1);
        CHECK(t0.terms().size() == 1);
        CHECK(t0.coefficient(0) == 1);

        auto a1 = EvenLattice::diagonal({2});
        VVQExpansion th = theta_definite(a1, 3);
        CHECK(th.coefficient(0, 0) == 1);
        CHECK(th.coefficient(1, 0) == 2);
        CHECK(th.coefficient(2, 0) == 0);
        CHECK(th.coefficient(Rational(1, 4), 1) == 2);
        CHECK(th.coefficient(Rational(9, 4), 1) == 2);
        CHECK(th.coefficient(Rational(5, 4), 1) == 0);

        CHECK_THROWS_AS(theta_definite(EvenLattice::diagonal({2, -2}), 2), InvalidInput);

        for (const auto& lat : {EvenLattice(int_matrix({{2, 1}, {1, 2}}), "A2"), EvenLattice::diagonal({2, 2}),
                                EvenLattice(int_matrix({{4, 1}, {1, 2}}), "B")}) {
            VVQExpansion t = theta_definite(lat, 10);
            CHECK(t.coefficient(0, 0) == 1);
            for (const auto& [e, row] : t.terms()) {
                for (const auto& c : row) {
                    CHECK(is_integral(c));
                    CHECK(c >= 0);
                }
            }
        }
    }

    TEST_CASE("theta_N")
    {
        VVQExpansion t1 = theta_N(1, 3);
        CHECK(t1.coefficient(0, 0) == 1);
        CHECK(t1.coefficient(1, 0) == 2);
        CHECK(t1.coefficient(Rational(1, 4), 1) == 2);
        CHECK(t1.coefficient(0, 1) == 0);

        VVQExpansion t3 = theta_N(3, 3);
        CHECK(t3.coefficient(Rational(1, 12), 1) == 1);
        CHECK(t3.coefficient(Rational(25, 12), 1) == 1);
        CHECK(t3.coefficient(Rational(13, 12), 1) == 0);
        for (std::size_t r = 1; r < 6; ++r) {
            CHECK(t3.coefficient(0, r) == 0);
        }

        for (long N : {1L, 2L, 3L, 5L, 6L}) {
            EvenLattice ln = EvenLattice::diagonal({2 * N});
            VVQExpansion a = theta_N(N, 6), b = theta_definite(ln, 6);
            const auto& d = ln.discriminant();
            for (long r = 0; r < 2 * N; ++r) {
                RatVector v(1);
                v(0) = Rational(r, 2 * N);
                const std::size_t j = d.index(d.reduce(v));
                for (long k = 0; k < 24 * N; ++k) {
                    const Rational e(k, 4 * N);
                    CHECK(a.coefficient(e, static_cast<std::size_t>(r)) == b.coefficient(e, j));
                }
            }
        }
    }

    TEST_CASE("theta_K_omega")
    {
        auto r1 = fixtures::siegel_rank1();
        IntVector omega = int_vector({1, -2, 2});
        CHECK(r1.K().norm(omega) == -6);
        VVQExpansion th = theta_K_omega(r1, omega, 4);
        CHECK(th.dim() == 2 * 6);
        // Exponent 0: lambda in Q omega cap K^*, i.e. multiples of omega/2 here.
        for (std::size_t j = 0; j < th.dim(); ++j) {
            const Rational c = th.coefficient(0, j);
            CHECK(c >= 0);
        }
        auto box = box_theta_K_omega(r1, omega, 4, 14);
        std::map<std::pair<Rational, std::size_t>, long> fast;
        for (const auto& [e, row] : th.terms()) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (row[j] != 0) {
                    fast[{e, j}] = to_long(num(row[j]));
                }
            }
        }
        CHECK(fast == box);

        CHECK_THROWS_AS(theta_K_omega(r1, int_vector({-1, 2, -2}), 4), InvalidInput);
        CHECK_THROWS_AS(theta_K_omega(r1, int_vector({2, -4, 4}), 4), InvalidInput);
        CHECK_THROWS_AS(theta_K_omega(r1, int_vector({1, 0, 0}), 4), InvalidInput);

        // Another Lorentzian K: the default rank 1 data of U + U + <2> + <2>.
        for (const auto& rr : fixtures::test_rank1()) {
            if (rr.K().signature().negative != 1) {
                continue;
            }
            IntVector ref = rr.cone_reference;
            IntVector w = make_primitive(ref);
            const Rational prec = 3;
            VVQExpansion t = theta_K_omega(rr, w, prec);
            auto b = box_theta_K_omega(rr, w, prec, 9);
            std::map<std::pair<Rational, std::size_t>, long> f;
            for (const auto& [e, row] : t.terms()) {
                for (std::size_t j = 0; j < row.size(); ++j) {
                    if (row[j] != 0) {
                        f[{e, j}] = to_long(num(row[j]));
                    }
                }
            }
            CHECK(f == b);
        }
    }

    TEST_CASE("E2")
    {
        VVQExpansion e2 = eisenstein_E2(6);
        CHECK(e2.coefficient(0) == 1);
        CHECK(e2.coefficient(1) == -24);
        CHECK(e2.coefficient(4) == -168);
        CHECK(e2.coefficient(5) == -144);
    }

    TEST_CASE("Hurwitz class numbers")
    {
        CHECK(hurwitz_H(0) == Rational(-1, 12));
        CHECK(hurwitz_H(3) == Rational(1, 3));
        CHECK(hurwitz_H(4) == Rational(1, 2));
        CHECK(hurwitz_H(23) == 3);
        CHECK(hurwitz_H(1) == 0);
        CHECK(hurwitz_H(2) == 0);
        for (long d = 0; d <= 500; ++d) {
            CHECK(hurwitz_H(d) == oracle::hurwitz_reduced_forms(d));
        }
    }

    TEST_CASE("Zagier class number series")
    {
        VVQExpansion g1 = zagier_plus(1, 3);
        CHECK(g1.coefficient(0, 0) == Rational(-1, 12));
        CHECK(g1.coefficient(Rational(3, 4), 1) == Rational(1, 3));
        CHECK(g1.coefficient(1, 0) == Rational(1, 2));
        VVQExpansion g3 = zagier_plus(3, 3);
        CHECK(g3.coefficient(Rational(1, 4), 3) == Rational(1, 3));
        CHECK(g3.floor() == 0);
        for (const auto& [e, row] : g3.terms()) {
            for (const auto& c : row) {
                CHECK(12 % to_long(den(c)) == 0);
            }
        }
        CHECK_THROWS_AS(zagier_plus(6, 2), ComputationRefused);
        CHECK_NOTHROW(zagier_plus(5, 2));
    }

    TEST_CASE("Weil representation")
    {
        EvenLattice u = EvenLattice::direct_sum({EvenLattice::hyperbolic_plane(), EvenLattice::hyperbolic_plane()});
        auto w0 = weil_matrices(u.discriminant(), Signature{8, 0});
        CHECK(std::abs(w0.rho_S(0, 0) - Complex(1, 0)) < 1e-12);
        CHECK(std::abs(w0.rho_T(0, 0) - Complex(1, 0)) < 1e-12);

        auto a1 = EvenLattice::diagonal({2});
        auto w = weil_matrices(a1.discriminant(), a1.signature());
        CHECK(std::abs(w.rho_T(0, 0) - Complex(1, 0)) < 1e-12);
        CHECK(std::abs(w.rho_T(1, 1) - Complex(0, 1)) < 1e-12);
        CHECK(unitarity_defect(w.rho_S) < 1e-10);
        CHECK(unitarity_defect(w.rho_T) < 1e-10);
        for (const auto& r : fixtures::test_rank1()) {
            auto wl = weil_matrices(r.ambient().discriminant(), r.ambient().signature());
            CHECK(unitarity_defect(wl.rho_S) < 1e-10);
        }
    }

    TEST_CASE("theta series transform under S with the Weil representation")
    {
        const std::vector<EvenLattice> lats = {EvenLattice::diagonal({2}), EvenLattice(int_matrix({{2, 1}, {1, 2}}), "A2"),
                                               EvenLattice::diagonal({2, 2}), EvenLattice::diagonal({4}),
                                               EvenLattice(int_matrix({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}), "A3")};
        const std::vector<Complex> taus = {Complex(0, 1), Complex(0, 2), Complex(0.5, 1.5)};
        for (const auto& lat : lats) {
            for (const auto& tau : taus) {
                CHECK(theta_s_defect(lat, tau, 40) < 1e-8);
            }
        }
        CHECK(theta_s_defect(EvenLattice::diagonal({2}), Complex(0, 1), 40, 1) > 1e-4);
    }
}
