#include "tordiv/qseries.hpp"

#include <algorithm>

namespace tordiv {

using Index = Eigen::Index;

VVQExpansion::VVQExpansion(std::size_t dim, Integer denominator, Rational floor, Rational precision)
    : dim_(dim), denominator_(std::move(denominator)), floor_(std::move(floor)), precision_(std::move(precision))
{
    if (dim_ == 0) {
        throw std::invalid_argument("expansion with no components");
    }
    if (denominator_ <= 0) {
        throw std::invalid_argument("expansion denominator must be positive");
    }
}

VVQExpansion VVQExpansion::unit(std::size_t dim, std::size_t component, Rational precision)
{
    VVQExpansion e(dim, 1, 0, std::move(precision));
    e.add_term(0, component, 1);
    return e;
}

void VVQExpansion::prune(const Rational& e)
{
    auto it = terms_.find(e);
    if (it != terms_.end() && std::all_of(it->second.begin(), it->second.end(), [](const Rational& c) { return c == 0; })) {
        terms_.erase(it);
    }
}

void VVQExpansion::add_term(const Rational& e, std::size_t j, const Rational& c)
{
    if (j >= dim_) {
        throw std::out_of_range("component index out of range");
    }
    if (!is_integral(e * Rational(denominator_))) {
        throw std::invalid_argument("exponent " + e.str() + " not in (1/" + denominator_.str() + ")Z");
    }
    if (e < floor_) {
        throw std::invalid_argument("exponent " + e.str() + " below floor " + floor_.str());
    }
    if (e >= precision_ || c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, Row(dim_, Rational(0)));
    it->second[j] += c;
    prune(e);
}

Rational VVQExpansion::coefficient(const Rational& e, std::size_t j) const
{
    if (e >= precision_) {
        throw PrecisionError("coefficient at exponent " + e.str() + " requested, expansion complete only below " +
                             precision_.str());
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second.at(j);
}

VVQExpansion VVQExpansion::truncated(const Rational& precision) const
{
    VVQExpansion out(dim_, denominator_, floor_, std::min(precision, precision_));
    for (const auto& [e, row] : terms_) {
        if (e < out.precision_) {
            out.terms_.emplace(e, row);
        }
    }
    return out;
}

VVQExpansion VVQExpansion::scaled(const Rational& s) const
{
    VVQExpansion out(dim_, denominator_, floor_, precision_);
    if (s == 0) {
        return out;
    }
    for (const auto& [e, row] : terms_) {
        Row r(row);
        for (auto& c : r) {
            c *= s;
        }
        out.terms_.emplace(e, std::move(r));
    }
    return out;
}

VVQExpansion& VVQExpansion::operator+=(const VVQExpansion& o)
{
    if (o.dim_ != dim_) {
        throw std::invalid_argument("adding expansions with different component sets");
    }
    denominator_ = lcm(denominator_, o.denominator_);
    floor_ = std::min(floor_, o.floor_);
    precision_ = std::min(precision_, o.precision_);
    std::map<Rational, Row> kept;
    for (auto& [e, row] : terms_) {
        if (e < precision_) {
            kept.emplace(e, std::move(row));
        }
    }
    terms_ = std::move(kept);
    for (const auto& [e, row] : o.terms_) {
        for (std::size_t j = 0; j < dim_; ++j) {
            add_term(e, j, row[j]);
        }
    }
    return *this;
}

bool VVQExpansion::operator==(const VVQExpansion& o) const
{
    return dim_ == o.dim_ && precision_ == o.precision_ && terms_ == o.terms_;
}

VVQExpansion pair(const VVQExpansion& a, const VVQExpansion& b)
{
    if (a.dim() != b.dim()) {
        throw InvalidInput("pairing expansions over different component sets");
    }
    VVQExpansion out = VVQExpansion::scalar(lcm(a.denominator(), b.denominator()), a.floor() + b.floor(),
                                            std::min(a.precision() + b.floor(), b.precision() + a.floor()));
    for (const auto& [ea, ra] : a.terms()) {
        for (const auto& [eb, rb] : b.terms()) {
            const Rational e = ea + eb;
            if (e >= out.precision()) {
                break;
            }
            Rational s = 0;
            for (std::size_t j = 0; j < a.dim(); ++j) {
                s += ra[j] * rb[j];
            }
            out.add_term(e, 0, s);
        }
    }
    return out;
}

VVQExpansion multiply(const VVQExpansion& scalar, const VVQExpansion& v)
{
    if (scalar.dim() != 1) {
        throw std::invalid_argument("multiply: first factor must be scalar");
    }
    VVQExpansion out(v.dim(), lcm(scalar.denominator(), v.denominator()), scalar.floor() + v.floor(),
                     std::min(scalar.precision() + v.floor(), v.precision() + scalar.floor()));
    for (const auto& [es, rs] : scalar.terms()) {
        for (const auto& [ev, rv] : v.terms()) {
            const Rational e = es + ev;
            if (e >= out.precision()) {
                break;
            }
            for (std::size_t j = 0; j < v.dim(); ++j) {
                out.add_term(e, j, rs[0] * rv[j]);
            }
        }
    }
    return out;
}

VVQExpansion q_d_dq(const VVQExpansion& a)
{
    Rational floor = a.floor();
    if (floor == 0) {
        floor = std::min(Rational(1) / Rational(a.denominator()), a.precision());
    }
    VVQExpansion out(a.dim(), a.denominator(), floor, a.precision());
    for (const auto& [e, row] : a.terms()) {
        if (e == 0) {
            continue;
        }
        for (std::size_t j = 0; j < a.dim(); ++j) {
            out.add_term(e, j, e * row[j]);
        }
    }
    return out;
}

Rational constant_term(const VVQExpansion& a)
{
    if (a.dim() != 1) {
        throw std::invalid_argument("constant term of a vector-valued expansion");
    }
    if (a.precision() <= 0) {
        throw PrecisionError("constant term requested, expansion complete only below " + a.precision().str());
    }
    return a.coefficient(0);
}

VVQExpansion up_first_factor(const VVQExpansion& a, const IsotropicQuotient& q, std::size_t dim_y)
{
    const DiscriminantForm& dl = q.ambient().discriminant();
    const DiscriminantForm& dq = q.quotient().discriminant();
    if (a.dim() != dq.order() * dim_y) {
        throw InvalidInput("up: expansion is not over the quotient discriminant group");
    }
    VVQExpansion out(dl.order() * dim_y, a.denominator(), a.floor(), a.precision());
    for (std::size_t mu = 0; mu < dl.order(); ++mu) {
        const auto& img = q.p(mu);
        if (!img) {
            continue;
        }
        const std::size_t delta = dq.index(*img);
        for (const auto& [e, row] : a.terms()) {
            for (std::size_t y = 0; y < dim_y; ++y) {
                out.add_term(e, mu * dim_y + y, row[delta * dim_y + y]);
            }
        }
    }
    return out;
}

VVQExpansion up(const VVQExpansion& a, const IsotropicQuotient& q) { return up_first_factor(a, q, 1); }

VVQExpansion pair_second_factor(const VVQExpansion& a, const VVQExpansion& b)
{
    if (a.dim() % b.dim() != 0) {
        throw InvalidInput("pair_second_factor: incompatible component sets");
    }
    const std::size_t dy = b.dim(), dx = a.dim() / dy;
    VVQExpansion out(dx, lcm(a.denominator(), b.denominator()), a.floor() + b.floor(),
                     std::min(a.precision() + b.floor(), b.precision() + a.floor()));
    for (const auto& [ea, ra] : a.terms()) {
        for (const auto& [eb, rb] : b.terms()) {
            const Rational e = ea + eb;
            if (e >= out.precision()) {
                break;
            }
            for (std::size_t x = 0; x < dx; ++x) {
                Rational s = 0;
                for (std::size_t y = 0; y < dy; ++y) {
                    s += ra[x * dy + y] * rb[y];
                }
                out.add_term(e, x, s);
            }
        }
    }
    return out;
}

void PrincipalPart::validate(const DiscriminantForm& disc) const
{
    auto name = [&](std::size_t mu) {
        std::string s = "(";
        const auto el = disc.element(mu);
        for (std::size_t i = 0; i < el.size(); ++i) {
            s += (i ? "," : "") + std::to_string(el[i]);
        }
        return s + ")";
    };
    for (const auto& [key, c] : negative) {
        if (key.mu >= disc.order()) {
            throw InvalidInput("principal part: element index out of range");
        }
        if (key.m <= 0) {
            throw InvalidInput("principal part: order m = " + key.m.str() + " must be positive");
        }
        if (mod1(key.m - disc.q(disc.element(key.mu))) != 0) {
            throw InvalidInput("principal part: m = " + key.m.str() + " is not congruent to q" + name(key.mu) +
                               " mod 1");
        }
        const std::size_t neg = disc.index(disc.negate(disc.element(key.mu)));
        auto it = negative.find(Key{neg, key.m});
        const Integer other = it == negative.end() ? Integer(0) : it->second;
        if (other != c) {
            throw InvalidInput("principal part is not symmetric: c(" + name(key.mu) + ", -" + key.m.str() +
                               ") = " + c.str() + " but c(" + name(neg) + ", -" + key.m.str() + ") = " + other.str());
        }
    }
    if (constants) {
        for (const auto& [mu, c] : *constants) {
            if (mu >= disc.order()) {
                throw InvalidInput("principal part: element index out of range");
            }
            if (disc.q(disc.element(mu)) != 0) {
                throw InvalidInput("principal part: constant term at " + name(mu) + " where q is not 0");
            }
            const std::size_t neg = disc.index(disc.negate(disc.element(mu)));
            if (constant(neg) != c) {
                throw InvalidInput("principal part is not symmetric at the constant term of " + name(mu));
            }
        }
    }
    for (const auto& [key, c] : extended) {
        if (key.m <= 0 || key.m >= extended_precision) {
            throw InvalidInput("extended coefficient outside (0, precision)");
        }
        if (mod1(key.m + disc.q(disc.element(key.mu))) != 0) {
            throw InvalidInput("extended coefficient exponent not congruent to -q" + name(key.mu));
        }
    }
}

Rational PrincipalPart::constant(std::size_t mu) const
{
    if (!constants) {
        throw ComputationRefused("the constant terms of the input form were not supplied");
    }
    auto it = constants->find(mu);
    return it == constants->end() ? Rational(0) : it->second;
}

Rational PrincipalPart::max_order() const
{
    Rational m = 0;
    for (const auto& [key, c] : negative) {
        m = std::max(m, key.m);
    }
    return m;
}

VVQExpansion PrincipalPart::to_expansion(const DiscriminantForm& disc) const
{
    const Integer den = disc.level();
    Rational precision = 0;
    if (constants) {
        precision = extended_precision > 0 ? extended_precision : Rational(1) / Rational(den);
    }
    VVQExpansion f(disc.order(), den, -max_order(), precision);
    for (const auto& [key, c] : negative) {
        f.add_term(-key.m, key.mu, Rational(c));
    }
    if (constants) {
        for (const auto& [mu, c] : *constants) {
            f.add_term(0, mu, c);
        }
        for (const auto& [key, c] : extended) {
            f.add_term(key.m, key.mu, c);
        }
    }
    return f;
}

PrincipalPart PrincipalPart::operator+(const PrincipalPart& o) const
{
    PrincipalPart out = *this;
    for (const auto& [key, c] : o.negative) {
        out.negative[key] += c;
    }
    std::erase_if(out.negative, [](const auto& kv) { return kv.second == 0; });
    if (constants && o.constants) {
        for (const auto& [mu, c] : *o.constants) {
            (*out.constants)[mu] += c;
        }
    } else {
        out.constants.reset();
    }
    if (extended_precision > 0 && o.extended_precision > 0) {
        out.extended_precision = std::min(extended_precision, o.extended_precision);
        for (const auto& [key, c] : o.extended) {
            out.extended[key] += c;
        }
        std::erase_if(out.extended, [&](const auto& kv) { return kv.first.m >= out.extended_precision; });
    } else {
        out.extended.clear();
        out.extended_precision = 0;
    }
    return out;
}

PrincipalPart PrincipalPart::scaled(const Integer& s) const
{
    PrincipalPart out = *this;
    for (auto& [key, c] : out.negative) {
        c *= s;
    }
    if (out.constants) {
        for (auto& [mu, c] : *out.constants) {
            c *= Rational(s);
        }
    }
    for (auto& [key, c] : out.extended) {
        c *= Rational(s);
    }
    std::erase_if(out.negative, [](const auto& kv) { return kv.second == 0; });
    return out;
}

bool PrincipalPart::is_zero() const
{
    if (!negative.empty()) {
        return false;
    }
    if (constants) {
        for (const auto& [mu, c] : *constants) {
            if (c != 0) {
                return false;
            }
        }
    }
    return true;
}

VVQExpansion theta_definite(const EvenLattice& D, const Rational& prec)
{
    if (D.rank() > 0 && !D.is_positive_definite()) {
        throw InvalidInput("theta series of '" + D.label() + "': lattice is not positive definite");
    }
    const DiscriminantForm& disc = D.discriminant();
    VVQExpansion theta(disc.order(), disc.level(), 0, prec);
    for (std::size_t i = 0; i < disc.order(); ++i) {
        const RatVector shift = disc.lift(disc.element(i));
        for (const auto& sv : short_vectors(D.gram(), prec, shift)) {
            const Rational e = sv.norm / 2;
            if (e < prec) {
                theta.add_term(e, i, 1);
            }
        }
    }
    return theta;
}

VVQExpansion theta_N(long N, const Rational& prec)
{
    if (N < 1) {
        throw InvalidInput("theta_N needs N >= 1");
    }
    VVQExpansion theta(static_cast<std::size_t>(2 * N), 4 * N, 0, prec);
    for (long l = 0; Rational(l * l, 4 * N) < prec; ++l) {
        theta.add_term(Rational(l * l, 4 * N), static_cast<std::size_t>(mod(l, 2 * N)), 1);
        if (l > 0) {
            theta.add_term(Rational(l * l, 4 * N), static_cast<std::size_t>(mod(-l, 2 * N)), 1);
        }
    }
    return theta;
}

VVQExpansion theta_K_omega(const Rank1CuspData& r1, const IntVector& omega, const Rational& prec)
{
    const EvenLattice& K = r1.K();
    const auto n = static_cast<Index>(K.rank());
    if (omega.size() != n) {
        throw InvalidInput("omega has the wrong length");
    }
    if (!is_primitive(omega)) {
        throw InvalidInput("omega = " + format_vector(omega) + " is not primitive");
    }
    const Integer norm = K.norm(omega);
    if (norm >= 0) {
        throw InvalidInput("omega = " + format_vector(omega) + " does not have negative norm");
    }
    if (r1.cone_reference.size() == 0 || !same_negative_cone(r1, to_rational(omega))) {
        throw InvalidInput("omega = " + format_vector(omega) + " does not lie in the cone C");
    }
    const long N = to_long(-norm / 2);
    const DiscriminantForm& dk = K.discriminant();

    // K^* = G^{-1} Z^n. With B unimodular, B e_1 = omega and a = B^{-T} b we get (lambda, omega) = b_1.
    const IntMatrix B = complete_to_basis(IntMatrix(omega));
    const RatMatrix G = to_rational(K.gram());
    const RatMatrix F = inverse(G) * inverse(to_rational(B)).transpose();
    const RatMatrix P = F.rightCols(n - 1); // basis of K^* cap omega^perp
    const RatMatrix gp = P.transpose() * G * P;
    const RatVector w = to_rational(omega);

    VVQExpansion theta(dk.order() * static_cast<std::size_t>(2 * N), lcm(dk.level(), Integer(4 * N)), 0, prec);
    for (long s = 0; s < 2 * N; ++s) {
        const Rational t = Rational(s, 2 * N);
        const RatVector perp = F.col(0) * Rational(s) + w * t;
        RatVector shift = RatVector::Zero(n - 1);
        if (n > 1) {
            auto c = solve(P, perp);
            if (!c) {
                throw std::logic_error("theta_K_omega: projection outside omega^perp");
            }
            shift = *c;
        }
        const std::size_t r = static_cast<std::size_t>(mod(-s, 2 * N));
        for (const auto& sv : short_vectors(gp, prec, shift)) {
            const Rational e = sv.norm / 2;
            if (e >= prec) {
                continue;
            }
            const RatVector lambda = P * sv.vector - w * t;
            theta.add_term(e, dk.index(dk.reduce(lambda)) * static_cast<std::size_t>(2 * N) + r, 1);
        }
    }
    return theta;
}

VVQExpansion eisenstein_E2(const Rational& prec)
{
    VVQExpansion e2 = VVQExpansion::scalar(1, 0, prec);
    e2.add_term(0, 0, 1);
    for (long k = 1; Rational(k) < prec; ++k) {
        long sigma = 0;
        for (long d = 1; d * d <= k; ++d) {
            if (k % d == 0) {
                sigma += d;
                if (d * d != k) {
                    sigma += k / d;
                }
            }
        }
        e2.add_term(k, 0, Rational(-24 * sigma));
    }
    return e2;
}

Rational hurwitz_H(long d)
{
    if (d < 0) {
        throw InvalidInput("hurwitz_H of a negative number");
    }
    if (d == 0) {
        return Rational(-1, 12);
    }
    if (d % 4 == 1 || d % 4 == 2) {
        return 0;
    }
    // Reduced forms (a, b, c), b^2 - 4ac = -d, |b| <= a <= c, enumerated by b >= 0 and a | (b^2 + d)/4.
    Rational h = 0;
    for (long b = d % 2; 3 * b * b <= d; b += 2) {
        const long k = (b * b + d) / 4;
        for (long a = std::max(b, 1L); a * a <= k; ++a) {
            if (k % a != 0) {
                continue;
            }
            const long c = k / a;
            if (a == b && b == c) {
                h += Rational(1, 3);
            } else if (b == 0 && a == c) {
                h += Rational(1, 2);
            } else if (b == 0 || a == b || a == c) {
                h += 1;
            } else {
                h += 2;
            }
        }
    }
    return h;
}

bool is_prime(long n)
{
    if (n < 2) {
        return false;
    }
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            return false;
        }
    }
    return true;
}

VVQExpansion zagier_plus(long N, const Rational& prec)
{
    if (N < 1) {
        throw InvalidInput("zagier_plus needs N >= 1");
    }
    if (N != 1 && !is_prime(N)) {
        throw ComputationRefused("no built-in G_N^+ for composite N = " + std::to_string(N) +
                                 "; supply an expansion file for this N");
    }
    const long M = 4 * N;
    VVQExpansion g(static_cast<std::size_t>(2 * N), M, 0, prec);
    for (long d = 0; Rational(d, M) < prec; ++d) {
        if (d % 4 == 1 || d % 4 == 2) {
            continue;
        }
        const Rational h = hurwitz_H(d);
        for (long r = 0; r < 2 * N; ++r) {
            if (mod(d + r * r, M) == 0) {
                g.add_term(Rational(d, M), static_cast<std::size_t>(r), h);
            }
        }
    }
    return g;
}

} // namespace tordiv
