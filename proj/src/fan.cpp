#include "tordiv/fan.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "tordiv/linalg.hpp"

namespace tordiv {

namespace {

using FlatKey = std::vector<Integer>;

FlatKey flat(const IntMatrix& m)
{
    FlatKey k;
    k.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            k.push_back(m(i, j));
        }
    }
    return k;
}

FlatKey flat_key(const RationalCone& c)
{
    FlatKey k;
    for (const auto& v : c.key()) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            k.push_back(v(i));
        }
    }
    k.push_back(static_cast<long>(c.generators.size()));
    return k;
}

FlatKey flat_vector(const IntVector& v)
{
    return FlatKey(v.begin(), v.end());
}

IntMatrix integer_inverse(const IntMatrix& g)
{
    const RatMatrix inv = inverse(to_rational(g));
    IntMatrix out(g.rows(), g.cols());
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            if (!is_integral(inv(i, j))) {
                throw InvalidInput("group generator is not invertible over Z");
            }
            out(i, j) = num(inv(i, j));
        }
    }
    return out;
}

std::string describe(const RationalCone& c)
{
    std::string s = c.label.empty() ? "cone" : c.label;
    s += " <";
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        s += (i ? ", " : "") + format_vector(c.generators[i]);
    }
    return s + ">";
}

bool is_isometry(const IntMatrix& g, const IntMatrix& gram)
{
    return IntMatrix(g.transpose() * gram * g) == gram;
}

Integer pairing(const IntMatrix& gram, const IntVector& a, const IntVector& b)
{
    return a.dot(gram * b);
}

void normalize_row(RatVector& row, Rational& rhs)
{
    for (Eigen::Index i = 0; i < row.size(); ++i) {
        if (row(i) != 0) {
            const Rational s = row(i) < 0 ? Rational(-row(i)) : row(i);
            row /= s;
            rhs /= s;
            return;
        }
    }
}

/// Points of C generated deterministically: integer vectors of negative norm in
/// the component of the reference.
std::vector<IntVector> sample_cone_points(const FanByOrbits& fan, std::size_t samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-9, 9);
    std::vector<IntVector> out;
    const Eigen::Index n = fan.rank();
    std::size_t attempts = 0;
    while (out.size() < samples && attempts < samples * 10000) {
        ++attempts;
        IntVector y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            y(i) = coord(rng);
        }
        if (pairing(fan.gram, y, y) >= 0) {
            continue;
        }
        if (pairing(fan.gram, y, fan.cone_reference) > 0) {
            y = -y;
        }
        out.push_back(y);
    }
    return out;
}

/// Greedy descent of |(y, reference)| under the generators and their inverses.
IntVector reduce_toward_reference(const IntVector& y0, const FanByOrbits& fan, const std::vector<IntMatrix>& moves)
{
    IntVector y = y0;
    auto height = [&](const IntVector& v) { return mp::abs(pairing(fan.gram, v, fan.cone_reference)); };
    Integer h = height(y);
    for (;;) {
        std::optional<IntVector> best;
        Integer best_h = h;
        for (const auto& g : moves) {
            IntVector z = g * y;
            const Integer hz = height(z);
            if (hz < best_h || (best && hz == best_h && lex_less(z, *best))) {
                best = z;
                best_h = hz;
            }
        }
        if (!best || best_h >= h) {
            return y;
        }
        y = *best;
        h = best_h;
    }
}

} // namespace

Eigen::Index RationalCone::ambient_dim() const
{
    return generators.empty() ? 0 : generators.front().size();
}

IntMatrix RationalCone::matrix() const
{
    IntMatrix m(ambient_dim(), static_cast<Eigen::Index>(generators.size()));
    for (std::size_t j = 0; j < generators.size(); ++j) {
        m.col(static_cast<Eigen::Index>(j)) = generators[j];
    }
    return m;
}

std::vector<IntVector> RationalCone::key() const
{
    std::vector<IntVector> k = generators;
    std::sort(k.begin(), k.end(), LexLess{});
    return k;
}

RationalCone make_cone(std::vector<IntVector> generators, std::string label, Eigen::Index ambient_dim)
{
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const IntVector& v = generators[i];
        if (v.size() != ambient_dim) {
            throw InvalidInput("cone " + label + ": generator of wrong length");
        }
        if (!is_primitive(v)) {
            throw InvalidInput("cone " + label + ": generator " + format_vector(v) + " is not primitive");
        }
        for (std::size_t j = 0; j < i; ++j) {
            IntMatrix pair(ambient_dim, 2);
            pair.col(0) = generators[j];
            pair.col(1) = v;
            if (rank(pair) < 2 && generators[j].dot(v) > 0) {
                throw InvalidInput("cone " + label + ": generators " + format_vector(generators[j]) + " and " +
                                   format_vector(v) + " span the same ray");
            }
        }
    }
    return RationalCone{std::move(generators), std::move(label)};
}

std::optional<RatVector> fourier_motzkin(const RatMatrix& A, const RatVector& b)
{
    const Eigen::Index n = A.cols();
    // Stage k holds the system in the variables 0 .. n-1-k.
    std::vector<std::vector<std::pair<RatVector, Rational>>> stages;
    std::vector<std::pair<RatVector, Rational>> current;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        RatVector row = A.row(i).transpose();
        Rational rhs = b(i);
        normalize_row(row, rhs);
        current.emplace_back(std::move(row), std::move(rhs));
    }
    for (Eigen::Index k = n - 1; k >= -1; --k) {
        // Drop duplicates and keep the tightest bound per direction.
        std::map<FlatKey, std::size_t> seen;
        std::vector<std::pair<RatVector, Rational>> unique;
        for (auto& [row, rhs] : current) {
            FlatKey key;
            for (Eigen::Index i = 0; i < row.size(); ++i) {
                key.push_back(num(row(i)));
                key.push_back(den(row(i)));
            }
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen.emplace(std::move(key), unique.size());
                unique.emplace_back(std::move(row), std::move(rhs));
            } else if (rhs < unique[it->second].second) {
                unique[it->second].second = rhs;
            }
        }
        stages.push_back(unique);
        if (k < 0) {
            break;
        }
        std::vector<std::pair<RatVector, Rational>> next;
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < unique.size(); ++r) {
            const Rational& a = unique[r].first(k);
            if (a > 0) {
                pos.push_back(r);
            } else if (a < 0) {
                neg.push_back(r);
            } else {
                next.emplace_back(unique[r].first.head(k), unique[r].second);
            }
        }
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                const Rational ap = unique[p].first(k), aq = -unique[q].first(k);
                RatVector row = (unique[p].first * aq + unique[q].first * ap).head(k);
                Rational rhs = unique[p].second * aq + unique[q].second * ap;
                normalize_row(row, rhs);
                next.emplace_back(std::move(row), std::move(rhs));
            }
        }
        current = std::move(next);
    }
    for (const auto& [row, rhs] : stages.back()) {
        if (rhs < 0) {
            return std::nullopt;
        }
    }
    // Back substitution: stage n-1-k constrains x_k given x_0 .. x_{k-1}.
    RatVector x = RatVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& sys = stages[static_cast<std::size_t>(n - 1 - k)];
        std::optional<Rational> lo, hi;
        for (const auto& [row, rhs] : sys) {
            Rational rest = rhs;
            for (Eigen::Index i = 0; i < k; ++i) {
                rest -= row(i) * x(i);
            }
            const Rational& a = row(k);
            if (a > 0) {
                const Rational bound = rest / a;
                if (!hi || bound < *hi) {
                    hi = bound;
                }
            } else if (a < 0) {
                const Rational bound = rest / a;
                if (!lo || bound > *lo) {
                    lo = bound;
                }
            }
        }
        if (lo && hi) {
            x(k) = (*lo <= 0 && 0 <= *hi) ? Rational(0) : *lo;
        } else if (lo) {
            x(k) = *lo > 0 ? *lo : Rational(0);
        } else if (hi) {
            x(k) = *hi < 0 ? *hi : Rational(0);
        }
    }
    return x;
}

Eigen::Index cone_dim(const RationalCone& c)
{
    return c.generators.empty() ? 0 : rank(c.matrix());
}

std::optional<RatVector> strong_convexity_witness(const RationalCone& c)
{
    const Eigen::Index n = c.ambient_dim();
    const auto k = static_cast<Eigen::Index>(c.generators.size());
    if (k == 0) {
        return RatVector::Zero(n);
    }
    // -(omega_j, nu) <= -1
    const RatMatrix A = -to_rational(c.matrix()).transpose();
    const RatVector b = RatVector::Constant(k, Rational(-1));
    return fourier_motzkin(A, b);
}

bool is_strongly_convex(const RationalCone& c)
{
    return strong_convexity_witness(c).has_value();
}

bool is_simplicial(const RationalCone& c)
{
    return static_cast<Eigen::Index>(c.generators.size()) == cone_dim(c);
}

bool is_smooth(const RationalCone& c)
{
    if (!is_simplicial(c)) {
        return false;
    }
    if (c.generators.empty()) {
        return true;
    }
    for (const auto& d : smith_normal_form(c.matrix()).invariant_factors()) {
        if (d != 1) {
            return false;
        }
    }
    return true;
}

std::vector<RationalCone> faces(const RationalCone& c)
{
    if (!is_simplicial(c)) {
        throw InvalidInput("faces: cone " + c.label + " is not simplicial");
    }
    const std::size_t d = c.generators.size();
    std::vector<std::size_t> masks((std::size_t{1} << d));
    std::iota(masks.begin(), masks.end(), std::size_t{0});
    std::stable_sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    std::vector<RationalCone> out;
    for (std::size_t mask : masks) {
        RationalCone f;
        std::string sub;
        for (std::size_t i = 0; i < d; ++i) {
            if (mask & (std::size_t{1} << i)) {
                f.generators.push_back(c.generators[i]);
                sub += std::to_string(i);
            }
        }
        f.label = c.label + "[" + sub + "]";
        out.push_back(std::move(f));
    }
    return out;
}

bool cone_contains(const RationalCone& c, const RatVector& y)
{
    if (c.generators.empty()) {
        return y.isZero();
    }
    const RatMatrix M = to_rational(c.matrix());
    // Non-negative combination; for dependent generators use the cone's FM description.
    if (is_simplicial(c)) {
        const auto a = solve(M, y);
        if (!a) {
            return false;
        }
        return std::all_of(a->begin(), a->end(), [](const Rational& t) { return t >= 0; });
    }
    const auto k = M.cols();
    const auto n = M.rows();
    RatMatrix A(2 * n + k, k);
    RatVector b(2 * n + k);
    A.topRows(n) = M;
    A.middleRows(n, n) = -M;
    A.bottomRows(k) = -RatMatrix::Identity(k, k);
    b.head(n) = y;
    b.segment(n, n) = -y;
    b.tail(k).setZero();
    return fourier_motzkin(A, b).has_value();
}

RationalCone transform(const IntMatrix& g, const RationalCone& c)
{
    RationalCone out;
    out.label = c.label;
    for (const auto& v : c.generators) {
        out.generators.push_back(g * v);
    }
    return out;
}

FanValidation fan_validate(const std::vector<RationalCone>& cones, bool require_face_closure)
{
    FanValidation report;
    std::set<FlatKey> present;
    for (const auto& c : cones) {
        if (!is_simplicial(c)) {
            report.violations.push_back("cone " + describe(c) + " is not simplicial");
            return report;
        }
        if (!is_strongly_convex(c)) {
            report.violations.push_back("cone " + describe(c) + " is not strongly convex");
        }
        present.insert(flat_key(c));
    }
    if (require_face_closure) {
        for (const auto& c : cones) {
            for (const auto& f : faces(c)) {
                if (!f.generators.empty() && !present.contains(flat_key(f))) {
                    report.violations.push_back("missing face " + describe(f) + " of " + describe(c));
                    present.insert(flat_key(f));
                }
            }
        }
    }
    for (std::size_t i = 0; i < cones.size(); ++i) {
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            const auto& c1 = cones[i];
            const auto& c2 = cones[j];
            std::set<FlatKey> g2;
            for (const auto& v : c2.generators) {
                g2.insert(flat_vector(v));
            }
            std::vector<bool> common(c1.generators.size());
            bool any_other = false;
            for (std::size_t a = 0; a < c1.generators.size(); ++a) {
                common[a] = g2.contains(flat_vector(c1.generators[a]));
                any_other = any_other || !common[a];
            }
            if (!any_other) {
                continue;
            }
            // a, b >= 0 with M1 a = M2 b and sum of the non-common a equal to 1.
            const RatMatrix M1 = to_rational(c1.matrix());
            const RatMatrix M2 = to_rational(c2.matrix());
            const Eigen::Index n = M1.rows(), k1 = M1.cols(), k2 = M2.cols();
            const Eigen::Index vars = k1 + k2;
            RatMatrix A = RatMatrix::Zero(2 * n + vars + 2, vars);
            RatVector b = RatVector::Zero(2 * n + vars + 2);
            A.block(0, 0, n, k1) = M1;
            A.block(0, k1, n, k2) = -M2;
            A.block(n, 0, n, k1) = -M1;
            A.block(n, k1, n, k2) = M2;
            A.block(2 * n, 0, vars, vars) = -RatMatrix::Identity(vars, vars);
            for (Eigen::Index a = 0; a < k1; ++a) {
                if (!common[static_cast<std::size_t>(a)]) {
                    A(2 * n + vars, a) = 1;
                    A(2 * n + vars + 1, a) = -1;
                }
            }
            b(2 * n + vars) = 1;
            b(2 * n + vars + 1) = -1;
            if (fourier_motzkin(A, b)) {
                report.violations.push_back("intersection of " + describe(c1) + " and " + describe(c2) +
                                            " is not a common face");
            }
        }
    }
    return report;
}

void FanByOrbits::validate() const
{
    const Eigen::Index n = gram.rows();
    if (gram.cols() != n || gram != gram.transpose()) {
        throw InvalidInput("fan: Gram matrix is not symmetric");
    }
    const Signature sig = gram_signature(gram);
    if (sig.negative != 1 || static_cast<Eigen::Index>(sig.positive) + 1 != n) {
        throw InvalidInput("fan: lattice is not Lorentzian");
    }
    if (cone_reference.size() != n || pairing(gram, cone_reference, cone_reference) >= 0) {
        throw InvalidInput("fan: cone_reference must have negative norm");
    }
    for (std::size_t i = 0; i < group_generators.size(); ++i) {
        const IntMatrix& g = group_generators[i];
        if (g.rows() != n || g.cols() != n) {
            throw InvalidInput("fan: group generator " + std::to_string(i) + " has the wrong shape");
        }
        if (!is_isometry(g, gram)) {
            throw InvalidInput("fan: group generator " + std::to_string(i) + " does not preserve the Gram matrix");
        }
        integer_inverse(g);
        if (pairing(gram, IntVector(g * cone_reference), cone_reference) >= 0) {
            throw InvalidInput("fan: group generator " + std::to_string(i) + " swaps the components of C");
        }
    }
    for (const auto& v : isotropic_rays) {
        if (v.size() != n || pairing(gram, v, v) != 0 || !is_primitive(v)) {
            throw InvalidInput("fan: isotropic ray " + format_vector(v) + " is not primitive isotropic");
        }
    }
    if (word_bound < 0) {
        throw InvalidInput("fan: word_bound must be non-negative");
    }
    for (const auto& c : cones) {
        if (c.ambient_dim() != n) {
            throw InvalidInput("fan: cone " + c.label + " has generators of the wrong length");
        }
        if (!is_simplicial(c)) {
            throw InvalidInput("fan: cone " + c.label + " is not simplicial");
        }
        if (!is_strongly_convex(c)) {
            throw InvalidInput("fan: cone " + c.label + " is not strongly convex");
        }
    }
}

GroupBall group_ball(const FanByOrbits& fan, int bound)
{
    const Eigen::Index n = fan.rank();
    std::vector<IntMatrix> moves;
    for (const auto& g : fan.group_generators) {
        moves.push_back(g);
        moves.push_back(integer_inverse(g));
    }
    GroupBall ball;
    std::set<FlatKey> seen;
    const IntMatrix id = IntMatrix::Identity(n, n);
    ball.elements.push_back(id);
    ball.word_length.push_back(0);
    seen.insert(flat(id));
    std::size_t frontier_begin = 0;
    for (int len = 1; len <= bound; ++len) {
        const std::size_t frontier_end = ball.elements.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& m : moves) {
                IntMatrix h = m * ball.elements[i];
                if (!is_isometry(h, fan.gram)) {
                    throw std::logic_error("group word does not preserve the Gram matrix");
                }
                if (seen.insert(flat(h)).second) {
                    ball.elements.push_back(std::move(h));
                    ball.word_length.push_back(len);
                }
            }
        }
        if (frontier_end == ball.elements.size()) {
            break;
        }
        frontier_begin = frontier_end;
    }
    return ball;
}

Stabilizer stabilizer(const RationalCone& c, const GroupBall& ball)
{
    Stabilizer st;
    const FlatKey target = flat_key(c);
    for (const auto& g : ball.elements) {
        if (flat_key(transform(g, c)) == target) {
            st.elements.push_back(g);
        }
    }
    st.order = st.elements.size();
    std::set<FlatKey> keys;
    for (const auto& g : st.elements) {
        keys.insert(flat(g));
    }
    st.closed = true;
    for (const auto& a : st.elements) {
        for (const auto& b : st.elements) {
            if (!keys.contains(flat(IntMatrix(a * b)))) {
                st.closed = false;
            }
        }
    }
    return st;
}

Stabilizer stabilizer(const RationalCone& c, const FanByOrbits& fan)
{
    return stabilizer(c, group_ball(fan, fan.word_bound));
}

OrbitPartition orbit_classify(const std::vector<RationalCone>& cones, const GroupBall& ball)
{
    OrbitPartition part;
    part.orbit_of.assign(cones.size(), 0);
    std::map<FlatKey, std::size_t> image_owner; // translate key -> orbit
    for (std::size_t i = 0; i < cones.size(); ++i) {
        auto it = image_owner.find(flat_key(cones[i]));
        if (it != image_owner.end()) {
            part.orbit_of[i] = it->second;
            continue;
        }
        const std::size_t orbit = part.representatives.size();
        part.representatives.push_back(i);
        part.labels.push_back("orbit-" + std::to_string(orbit));
        part.orbit_of[i] = orbit;
        for (const auto& g : ball.elements) {
            image_owner.emplace(flat_key(transform(g, cones[i])), orbit);
        }
    }
    return part;
}

OrbitPartition orbit_classify(const std::vector<RationalCone>& cones, const FanByOrbits& fan)
{
    return orbit_classify(cones, group_ball(fan, fan.word_bound));
}

std::vector<RayDatum> RayClassification::inner() const
{
    std::vector<RayDatum> out;
    for (const auto& r : rays) {
        if (!r.isotropic) {
            out.push_back(r);
        }
    }
    return out;
}

RayClassification ray_classify(const FanByOrbits& fan, const GroupBall& ball)
{
    RayClassification out;
    std::vector<RationalCone> rays;
    std::set<FlatKey> seen;
    for (const auto& c : fan.cones) {
        for (const auto& v : c.generators) {
            if (seen.insert(flat_vector(v)).second) {
                rays.push_back(RationalCone{{v}, format_vector(v)});
            }
        }
    }
    const OrbitPartition part = orbit_classify(rays, ball);
    std::set<FlatKey> declared_images;
    for (const auto& w : fan.isotropic_rays) {
        for (const auto& g : ball.elements) {
            declared_images.insert(flat_vector(IntVector(g * w)));
        }
    }
    std::size_t inner_count = 0, iso_count = 0;
    for (std::size_t o = 0; o < part.representatives.size(); ++o) {
        const IntVector& w = rays[part.representatives[o]].generators.front();
        const Integer norm = pairing(fan.gram, w, w);
        RayDatum d;
        d.omega = w;
        if (norm == 0) {
            d.isotropic = true;
            d.orbit_label = "isotropic-" + std::to_string(iso_count++);
            if (!declared_images.contains(flat_vector(w))) {
                out.violations.push_back("isotropic ray " + format_vector(w) +
                                         " matches no declared isotropic ray up to the group");
            }
        } else if (norm < 0) {
            d.N = -norm / 2;
            d.orbit_label = "inner-" + std::to_string(inner_count++);
            if (pairing(fan.gram, w, fan.cone_reference) >= 0) {
                out.violations.push_back("inner ray " + format_vector(w) + " lies in the wrong component of the cone");
            }
        } else {
            out.violations.push_back("ray " + format_vector(w) + " has positive norm");
            continue;
        }
        out.rays.push_back(std::move(d));
    }
    return out;
}

RayClassification ray_classify(const FanByOrbits& fan)
{
    return ray_classify(fan, group_ball(fan, fan.word_bound));
}

AdmissibilityReport admissibility_report(const FanByOrbits& fan, std::size_t samples, std::uint64_t seed)
{
    AdmissibilityReport rep;
    rep.samples = samples;
    const GroupBall ball = group_ball(fan, fan.word_bound);

    // (a) invariance: translates by generators are orbit members, and the local
    // star of translates meets only in common faces.
    rep.invariance = true;
    {
        std::set<FlatKey> orbit_keys;
        for (const auto& c : fan.cones) {
            for (const auto& g : ball.elements) {
                orbit_keys.insert(flat_key(transform(g, c)));
            }
        }
        for (const auto& g : fan.group_generators) {
            for (const auto& c : fan.cones) {
                if (!orbit_keys.contains(flat_key(transform(g, c)))) {
                    rep.invariance = false;
                    rep.failures.push_back("translate of " + describe(c) + " is not in the fan");
                }
            }
        }
        std::vector<RationalCone> star;
        std::set<FlatKey> star_keys;
        const int radius = std::min(fan.word_bound, 3);
        for (std::size_t i = 0; i < ball.elements.size() && ball.word_length[i] <= radius; ++i) {
            for (const auto& c : fan.cones) {
                RationalCone t = transform(ball.elements[i], c);
                if (star_keys.insert(flat_key(t)).second) {
                    star.push_back(std::move(t));
                }
            }
        }
        const FanValidation v = fan_validate(star, false);
        if (!v.ok()) {
            rep.invariance = false;
            for (const auto& s : v.violations) {
                rep.failures.push_back("local star: " + s);
            }
        }
    }

    // (b) coverage by sampled points of C.
    rep.coverage = true;
    {
        std::vector<IntMatrix> moves;
        for (const auto& g : fan.group_generators) {
            moves.push_back(g);
            moves.push_back(integer_inverse(g));
        }
        std::vector<RatMatrix> full_inverse;
        for (const auto& c : fan.cones) {
            if (cone_dim(c) == fan.rank() && is_simplicial(c)) {
                full_inverse.push_back(inverse(to_rational(c.matrix())));
            }
        }
        const auto points = sample_cone_points(fan, samples, seed);
        if (points.size() < samples) {
            rep.coverage = false;
            rep.failures.push_back("could not generate the requested number of sample points");
        }
        for (const auto& y0 : points) {
            const IntVector y = reduce_toward_reference(y0, fan, moves);
            bool hit = false;
            for (const auto& g : ball.elements) {
                const RatVector gy = to_rational(IntVector(g * y));
                for (const auto& inv : full_inverse) {
                    const RatVector a = inv * gy;
                    if (std::all_of(a.begin(), a.end(), [](const Rational& t) { return t >= 0; })) {
                        hit = true;
                        break;
                    }
                }
                if (hit) {
                    break;
                }
            }
            if (!hit) {
                rep.coverage = false;
                rep.failures.push_back("sample " + format_vector(y0) + " (reduced " + format_vector(y) +
                                       ") lies in no cone translate");
            }
        }
    }

    // (c) boundary rays.
    const RayClassification rc = ray_classify(fan, ball);
    rep.boundary = rc.violations.empty();
    for (const auto& s : rc.violations) {
        rep.failures.push_back(s);
    }
    return rep;
}

Integer ord_along_ray(const IntVector& nu, const IntVector& omega)
{
    if (!is_primitive(omega)) {
        throw InvalidInput("ord_along_ray: " + format_vector(omega) + " is not primitive");
    }
    if (nu.size() != omega.size()) {
        throw InvalidInput("ord_along_ray: dimension mismatch");
    }
    return nu.dot(omega);
}

std::vector<IntVector> dual_basis_smooth_cone(const RationalCone& c)
{
    if (!is_smooth(c)) {
        throw InvalidInput("dual basis: cone " + c.label + " is not smooth");
    }
    if (c.generators.empty()) {
        return {};
    }
    const IntMatrix B = complete_to_basis(c.matrix());
    const RatMatrix inv = inverse(to_rational(B));
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        IntVector k(B.rows());
        for (Eigen::Index j = 0; j < B.rows(); ++j) {
            k(j) = num(inv(static_cast<Eigen::Index>(i), j));
        }
        out.push_back(std::move(k));
    }
    return out;
}

Eigen::Index orbit_dim(const RationalCone& c, Eigen::Index lattice_rank)
{
    return lattice_rank - cone_dim(c);
}

IntMatrix traceless_conjugation(const IntMatrix& g)
{
    if (g.rows() != 2 || g.cols() != 2 || determinant(g) != 1) {
        throw InvalidInput("traceless_conjugation needs a 2x2 matrix of determinant 1");
    }
    IntMatrix ginv(2, 2);
    ginv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    IntMatrix out(3, 3);
    const std::array<IntMatrix, 3> basis = {int_matrix({{1, 0}, {0, -1}}), int_matrix({{0, 1}, {0, 0}}),
                                            int_matrix({{0, 0}, {1, 0}})};
    for (Eigen::Index j = 0; j < 3; ++j) {
        const IntMatrix m = g * basis[static_cast<std::size_t>(j)] * ginv;
        out(0, j) = m(0, 0);
        out(1, j) = m(0, 1);
        out(2, j) = m(1, 0);
    }
    return out;
}

} // namespace tordiv
