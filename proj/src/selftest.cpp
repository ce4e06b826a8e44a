#include "tordiv/selftest.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "tordiv/lattice.hpp"
#include "tordiv/qseries.hpp"
#include "tordiv/weil.hpp"

namespace tordiv {

namespace {

// Every v in Z^n with v^T G v <= 2 bound, from a box sized by the diagonal of
// G^{-1}, computed in floating point with a safety margin.
std::set<std::vector<Integer>> naive_short_vectors(const IntMatrix& gram, long bound)
{
    const Eigen::Index n = gram.rows();
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = gram(i, j).convert_to<double>();
        }
    }
    const Eigen::MatrixXd ginv = g.inverse();
    std::vector<long> r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        r[i] = static_cast<long>(std::ceil(std::sqrt(2.0 * static_cast<double>(bound) * ginv(i, i)))) + 1;
    }
    std::set<std::vector<Integer>> out;
    std::vector<long> k(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k[i] = -r[i];
    }
    for (;;) {
        IntVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            v(i) = k[i];
        }
        if (v.dot(gram * v) <= 2 * bound) {
            out.insert(std::vector<Integer>(v.begin(), v.end()));
        }
        Eigen::Index i = 0;
        while (i < n && k[i] == r[i]) {
            k[i] = -r[i];
            ++i;
        }
        if (i == n) {
            break;
        }
        ++k[i];
    }
    return out;
}

IntMatrix random_positive_gram(std::mt19937_64& rng, int n)
{
    std::uniform_int_distribution<long> off(-2, 2);
    IntMatrix g = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            g(i, j) = g(j, i) = off(rng);
        }
    }
    for (int i = 0; i < n; ++i) {
        Integer row = 0;
        for (int j = 0; j < n; ++j) {
            if (j != i) {
                row += abs(g(i, j));
            }
        }
        g(i, i) = 2 * (row / 2 + 1 + static_cast<long>(rng() % 2));
    }
    return g;
}

SelftestCheck check_short_vectors(std::uint64_t seed)
{
    SelftestCheck c{"short vectors vs naive box", true, false, ""};
    std::mt19937_64 rng(seed);
    int compared = 0;
    for (int t = 0; t < 12; ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const IntMatrix g = random_positive_gram(rng, n);
        const long bound = 1 + static_cast<long>(rng() % 12);
        std::set<std::vector<Integer>> fp;
        for (const auto& sv : short_vectors(g, Rational(bound), RatVector::Zero(n))) {
            std::vector<Integer> v;
            for (const auto& x : sv.vector) {
                v.push_back(num(x));
            }
            fp.insert(v);
        }
        if (fp != naive_short_vectors(g, bound)) {
            c.passed = false;
            c.detail = "mismatch for a rank " + std::to_string(n) + " Gram, bound " + std::to_string(bound);
            return c;
        }
        ++compared;
    }
    c.detail = std::to_string(compared) + " random Grams";
    return c;
}

// Weighted count of reduced forms (a, b, c), b^2 - 4ac = -d.
Rational reduced_form_count(long d)
{
    if (d == 0) {
        return Rational(-1, 12);
    }
    if (d % 4 == 1 || d % 4 == 2) {
        return 0;
    }
    Rational total = 0;
    for (long a = 1; 3 * a * a <= d; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if ((b * b + d) % (4 * a) != 0) {
                continue;
            }
            const long cc = (b * b + d) / (4 * a);
            if (cc < a || (cc == a && b < 0)) {
                continue;
            }
            Rational w = 1;
            if (a == b && a == cc) {
                w = Rational(1, 3);
            } else if (b == 0 && a == cc) {
                w = Rational(1, 2);
            }
            total += w;
        }
    }
    return total;
}

SelftestCheck check_hurwitz()
{
    SelftestCheck c{"Hurwitz class numbers vs reduced forms", true, false, "d <= 300"};
    for (long d = 0; d <= 300; ++d) {
        if (hurwitz_H(d) != reduced_form_count(d)) {
            c.passed = false;
            c.detail = "mismatch at d = " + std::to_string(d);
            break;
        }
    }
    return c;
}

SelftestCheck check_theta(const SelftestOptions& opts)
{
    SelftestCheck c{"theta series S-transformation", true, false, ""};
    if (opts.quick) {
        c.skipped = true;
        c.detail = "skipped (--quick)";
        return c;
    }
    const std::vector<EvenLattice> lattices = {
        EvenLattice(int_matrix({{2}}), "<2>"),
        EvenLattice(int_matrix({{2, -1}, {-1, 2}}), "A2"),
        EvenLattice(int_matrix({{2, 0}, {0, 2}}), "<2>+<2>"),
    };
    const std::vector<Complex> taus = {{0, 1}, {0, 2}, {0.5, 1.5}};
    double worst = 0;
    for (const auto& D : lattices) {
        for (const auto& tau : taus) {
            worst = std::max(worst, theta_s_defect(D, tau, opts.theta_precision, opts.theta_perturbation));
        }
    }
    std::ostringstream os;
    os << "max defect " << worst << " (tolerance 1e-8)";
    c.detail = os.str();
    c.passed = worst < 1e-8;
    return c;
}

} // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& opts)
{
    return {check_short_vectors(opts.seed), check_hurwitz(), check_theta(opts)};
}

} // namespace tordiv
