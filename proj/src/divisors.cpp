#include "tordiv/divisors.hpp"

#include <set>
#include <sstream>

#include "tordiv/linalg.hpp"

namespace tordiv {

namespace {

std::size_t canonical_mu(const DiscriminantForm& disc, std::size_t mu)
{
    const std::size_t neg = disc.index(disc.negate(disc.element(mu)));
    return std::min(mu, neg);
}

void check_discriminant_pair(const DiscriminantForm& disc, const Rational& m, std::size_t mu)
{
    if (mu >= disc.order()) {
        throw InvalidInput("mu index " + std::to_string(mu) + " out of range");
    }
    if (m <= 0) {
        throw InvalidInput("m must be positive, got " + m.str());
    }
    if (mod1(m) != mod1(disc.q(disc.element(mu)))) {
        throw InvalidInput("m = " + m.str() + " is not congruent to q(mu) = " + disc.q(disc.element(mu)).str() +
                           " mod 1");
    }
}

std::string constant_symbol(const std::string& prefix, std::size_t nu)
{
    return prefix + "(" + std::to_string(nu) + ",0)";
}

const Rank2CuspData* find_J_containing(const CompactificationDatum& d, const IntVector& z,
                                       const Rank2CuspData* start = nullptr)
{
    bool past = start == nullptr;
    for (const auto& r2 : d.rank2) {
        if (!past) {
            past = &r2 == start;
            continue;
        }
        if (in_integer_span(r2.quotient.isotropic_basis(), to_rational(z))) {
            return &r2;
        }
    }
    return nullptr;
}

} // namespace

// --- LinearForm ---------------------------------------------------------------

LinearForm LinearForm::symbol(const std::string& name, const Rational& coeff)
{
    LinearForm f;
    if (coeff != 0) {
        f.symbols[name] = coeff;
    }
    return f;
}

Rational LinearForm::coefficient(const std::string& name) const
{
    auto it = symbols.find(name);
    return it == symbols.end() ? Rational(0) : it->second;
}

LinearForm& LinearForm::operator+=(const LinearForm& o)
{
    constant += o.constant;
    for (const auto& [s, c] : o.symbols) {
        symbols[s] += c;
        if (symbols[s] == 0) {
            symbols.erase(s);
        }
    }
    return *this;
}

LinearForm LinearForm::scaled(const Rational& s) const
{
    if (s == 0) {
        return LinearForm{};
    }
    LinearForm out;
    out.constant = constant * s;
    for (const auto& [name, c] : symbols) {
        out.symbols[name] = c * s;
    }
    return out;
}

std::string LinearForm::str() const
{
    std::ostringstream os;
    bool first = true;
    if (constant != 0 || symbols.empty()) {
        os << constant.str();
        first = false;
    }
    for (const auto& [name, c] : symbols) {
        if (!first) {
            os << (c < 0 ? " - " : " + ");
        } else if (c < 0) {
            os << "-";
        }
        const Rational a = c < 0 ? Rational(-c) : c;
        if (a != 1) {
            os << a.str() << "*";
        }
        os << name;
        first = false;
    }
    return os.str();
}

// --- DivisorKey / FormalDivisor -------------------------------------------------

DivisorKey DivisorKey::Z(const DiscriminantForm& disc, const Rational& m, std::size_t mu)
{
    check_discriminant_pair(disc, m, mu);
    DivisorKey k;
    k.type = Type::Z;
    k.m = m;
    k.mu = canonical_mu(disc, mu);
    return k;
}

DivisorKey DivisorKey::BJ(const std::string& label)
{
    DivisorKey k;
    k.type = Type::BJ;
    k.cusp = label;
    return k;
}

DivisorKey DivisorKey::BIomega(const std::string& cusp, const std::string& ray)
{
    DivisorKey k;
    k.type = Type::BIomega;
    k.cusp = cusp;
    k.ray = ray;
    return k;
}

bool DivisorKey::operator<(const DivisorKey& o) const
{
    if (type != o.type) {
        return type < o.type;
    }
    if (m != o.m) {
        return m < o.m;
    }
    if (mu != o.mu) {
        return mu < o.mu;
    }
    if (cusp != o.cusp) {
        return cusp < o.cusp;
    }
    return ray < o.ray;
}

std::string DivisorKey::str() const
{
    switch (type) {
    case Type::Z:
        return "Z(" + m.str() + "," + std::to_string(mu) + ")";
    case Type::BJ:
        return "B_J[" + cusp + "]";
    case Type::BIomega:
        return "B_I,omega[" + cusp + "," + ray + "]";
    }
    return {};
}

void FormalDivisor::add(const DivisorKey& key, const LinearForm& c)
{
    if (c.is_zero()) {
        return;
    }
    LinearForm& slot = terms_[key];
    slot += c;
    if (slot.is_zero()) {
        terms_.erase(key);
    }
}

LinearForm FormalDivisor::coefficient(const DivisorKey& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? LinearForm{} : it->second;
}

FormalDivisor& FormalDivisor::operator+=(const FormalDivisor& o)
{
    for (const auto& [k, c] : o.terms_) {
        add(k, c);
    }
    return *this;
}

FormalDivisor FormalDivisor::scaled(const Rational& s) const
{
    FormalDivisor out;
    for (const auto& [k, c] : terms_) {
        out.add(k, c.scaled(s));
    }
    return out;
}

std::string FormalDivisor::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto& [k, c] : terms_) {
        if (!s.empty()) {
            s += " + ";
        }
        s += "(" + c.str() + ")*" + k.str();
    }
    return s;
}

// --- datum ----------------------------------------------------------------------

std::size_t CompactificationDatum::n() const
{
    return static_cast<std::size_t>(lattice.signature().positive);
}

void CompactificationDatum::classify_rays()
{
    for (auto& c : rank1) {
        c.inner_rays.clear();
        if (!c.fan) {
            continue;
        }
        const RayClassification rc = ray_classify(*c.fan);
        if (!rc.violations.empty()) {
            throw InvalidInput("fan of cusp " + c.data.label + ": " + rc.violations.front());
        }
        c.inner_rays = rc.inner();
    }
}

void CompactificationDatum::validate() const
{
    const Signature sig = lattice.signature();
    if (sig.negative != 2 || sig.positive < 1) {
        throw InvalidInput("lattice " + lattice.label() + " does not have signature (n, 2) with n >= 1");
    }
    std::set<std::string> labels;
    for (const auto& r2 : rank2) {
        if (r2.ambient().gram() != lattice.gram()) {
            throw InvalidInput("rank 2 cusp " + r2.label + " is not in the workspace lattice");
        }
        if (!labels.insert("J:" + r2.label).second) {
            throw InvalidInput("duplicate rank 2 cusp label " + r2.label);
        }
    }
    for (const auto& c : rank1) {
        const auto& r1 = c.data;
        if (r1.ambient().gram() != lattice.gram()) {
            throw InvalidInput("rank 1 cusp " + r1.label + " is not in the workspace lattice");
        }
        if (!labels.insert("I:" + r1.label).second) {
            throw InvalidInput("duplicate rank 1 cusp label " + r1.label);
        }
        if (!c.fan) {
            if (!c.inner_rays.empty()) {
                throw InvalidInput("cusp " + r1.label + " lists inner rays without a fan");
            }
            continue;
        }
        const FanByOrbits& fan = *c.fan;
        fan.validate();
        if (fan.gram != r1.K().gram()) {
            throw InvalidInput("fan of cusp " + r1.label + " is not given in the K coordinates of the cusp");
        }
        if (!r1.cone_reference.size() ||
            IntVector(fan.cone_reference).dot(r1.K().gram() * r1.cone_reference) >= 0) {
            throw InvalidInput("fan of cusp " + r1.label + " uses the other component of the negative cone");
        }
        for (const auto& ray : c.inner_rays) {
            if (ray.isotropic || r1.K().norm(ray.omega) != -2 * ray.N || ray.N <= 0) {
                throw InvalidInput("cusp " + r1.label + ": bad inner ray " + format_vector(ray.omega));
            }
        }
        if (fan.isotropic_rays.empty()) {
            continue;
        }
        const GroupBall ball = group_ball(fan, fan.word_bound);
        std::set<std::vector<Integer>> boundary_images;
        for (const Rank2CuspData* r2 = find_J_containing(*this, r1.z); r2 != nullptr;
             r2 = find_J_containing(*this, r1.z, r2)) {
            const IntVector w = boundary_ray(r1, *r2);
            for (const auto& g : ball.elements) {
                const IntVector gw = g * w;
                boundary_images.insert(std::vector<Integer>(gw.begin(), gw.end()));
            }
        }
        for (const auto& w : fan.isotropic_rays) {
            if (!boundary_images.contains(std::vector<Integer>(w.begin(), w.end()))) {
                throw InvalidInput("isotropic ray " + format_vector(w) + " of cusp " + r1.label +
                                   " is not the boundary ray of a listed rank 2 cusp containing it");
            }
        }
    }
    for (const auto& [N, g] : g_plus_overrides) {
        if (N < 1 || g.dim() != static_cast<std::size_t>(2 * N)) {
            throw InvalidInput("G_plus override for N = " + std::to_string(N) + " has the wrong dimension");
        }
    }
}

// --- series inputs ----------------------------------------------------------------

VVQExpansion builtin_g_plus(long N, const Rational& prec)
{
    if (N != 1 && !is_prime(N)) {
        throw ComputationRefused("G_N^+ is built in only for N = 1 or prime; N = " + std::to_string(N) +
                                 " needs an override");
    }
    return zagier_plus(N, prec).scaled(-1);
}

VVQExpansion g_plus(const CompactificationDatum& datum, long N, const Rational& prec)
{
    auto it = datum.g_plus_overrides.find(N);
    if (it == datum.g_plus_overrides.end()) {
        return builtin_g_plus(N, prec);
    }
    if (it->second.precision() < prec) {
        throw PrecisionError("G_plus override for N = " + std::to_string(N) + " is known below " +
                             it->second.precision().str() + ", need " + prec.str());
    }
    return it->second;
}

LinearForm ct_pairing(const VVQExpansion& X, const PrincipalPart& F, const DiscriminantForm& disc,
                      const std::string& prefix)
{
    if (X.dim() != disc.order()) {
        throw InvalidInput("ct_pairing: expansion is not over the discriminant group of L");
    }
    if (X.precision() <= F.max_order()) {
        throw PrecisionError("ct_pairing: expansion known below " + X.precision().str() + ", need above " +
                             F.max_order().str());
    }
    LinearForm out;
    for (const auto& [key, c] : F.negative) {
        out.constant += Rational(c) * X.coefficient(key.m, key.mu);
    }
    for (std::size_t nu = 0; nu < disc.order(); ++nu) {
        if (disc.q(disc.element(nu)) != 0) {
            continue;
        }
        const Rational x0 = X.coefficient(0, nu);
        if (x0 == 0) {
            continue;
        }
        if (F.constants) {
            out.constant += x0 * F.constant(nu);
        } else {
            out += LinearForm::symbol(constant_symbol(prefix, nu), x0);
        }
    }
    for (const auto& [e, row] : X.terms()) {
        if (e >= 0) {
            break;
        }
        if (-e >= F.extended_precision) {
            throw PrecisionError("ct_pairing: F's coefficients at exponent " + Rational(-e).str() +
                                 " are not supplied");
        }
        for (std::size_t mu = 0; mu < row.size(); ++mu) {
            if (row[mu] == 0) {
                continue;
            }
            auto it = F.extended.find(PrincipalPart::Key{mu, -e});
            if (it != F.extended.end()) {
                out.constant += row[mu] * it->second;
            }
        }
    }
    return out;
}

PrincipalPart poincare_principal_part(const DiscriminantForm& disc, const Rational& m, std::size_t mu)
{
    check_discriminant_pair(disc, m, mu);
    PrincipalPart F;
    F.negative[{mu, m}] += 1;
    F.negative[{disc.index(disc.negate(disc.element(mu))), m}] += 1;
    return F;
}

std::string poincare_constant_prefix(const Rational& m, std::size_t mu)
{
    return "c[" + m.str() + "," + std::to_string(mu) + "]";
}

// --- multiplicities -----------------------------------------------------------------

Rational mult_J(const Rank2CuspData& r2, const Rational& m, std::size_t mu)
{
    const DiscriminantForm& disc = r2.ambient().discriminant();
    check_discriminant_pair(disc, m, mu);
    const auto n = static_cast<long>(r2.ambient().signature().positive);
    if (n < 3) {
        throw ComputationRefused("mult_J needs n >= 3; for n = 2 the multiplicity depends on constant terms");
    }
    const auto mu_el = disc.element(mu);
    if (!r2.perpendicular(mu_el)) {
        return 0;
    }
    const auto& p = r2.p_D(mu_el);
    if (!p) {
        return 0;
    }
    return Rational(2) * m / Rational(n - 2) * Rational(coset_representation_count(r2.D(), *p, m));
}

LinearForm mult_I_omega(const Rank1CuspData& r1, const RayDatum& ray, const PrincipalPart& F,
                        const VVQExpansion& G_plus, const std::string& prefix)
{
    if (ray.isotropic || ray.N <= 0) {
        throw InvalidInput("mult_I_omega needs an inner ray");
    }
    if (r1.K().norm(ray.omega) != -2 * ray.N) {
        throw InvalidInput("ray " + format_vector(ray.omega) + " does not have norm -2N");
    }
    const long N = to_long(ray.N);
    if (G_plus.dim() != static_cast<std::size_t>(2 * N)) {
        throw InvalidInput("G_plus is not over Z/2N for N = " + std::to_string(N));
    }
    const DiscriminantForm& disc = r1.ambient().discriminant();
    F.validate(disc);
    const Rational prec = F.max_order() + 1;
    if (G_plus.precision() < prec) {
        throw PrecisionError("G_plus known below " + G_plus.precision().str() + ", need " + prec.str());
    }
    const VVQExpansion theta = theta_K_omega(r1, ray.omega, prec);
    const VVQExpansion lifted = up_first_factor(theta, r1.quotient, static_cast<std::size_t>(2 * N));
    const VVQExpansion X = pair_second_factor(lifted, G_plus);
    return -ct_pairing(X, F, disc, prefix);
}

BoundaryJ borcherds_boundary_J(const Rank2CuspData& r2, const PrincipalPart& F)
{
    const DiscriminantForm& disc = r2.ambient().discriminant();
    F.validate(disc);
    const auto n = static_cast<long>(r2.ambient().signature().positive);
    const Rational prec = F.max_order() + 1;
    const VVQExpansion lifted = up(theta_definite(r2.D(), prec), r2.quotient);
    BoundaryJ out;
    if (n >= 3) {
        const LinearForm a = ct_pairing(q_d_dq(lifted), F, disc);
        out.theta_derivative_path = a.constant / Rational(n - 2);
    }
    if (F.constants) {
        const LinearForm b = ct_pairing(multiply(eisenstein_E2(prec), lifted), F, disc);
        out.e2_path = b.constant / 24;
    }
    if (out.theta_derivative_path && out.e2_path && *out.theta_derivative_path != *out.e2_path) {
        throw InvalidInput("B_J coefficient for " + r2.label + ": theta-derivative path gives " +
                           out.theta_derivative_path->str() + " but the E2 path gives " + out.e2_path->str() +
                           "; F is not a weakly holomorphic form for the dual Weil representation");
    }
    if (out.theta_derivative_path) {
        out.value = *out.theta_derivative_path;
    } else if (out.e2_path) {
        out.value = *out.e2_path;
    } else {
        throw InvalidInput("B_J coefficient for n = 2 needs the constant terms of F");
    }
    return out;
}

// --- divisors ---------------------------------------------------------------------

FormalDivisor ztor_divisor(const CompactificationDatum& datum, const Rational& m, std::size_t mu,
                           const std::optional<std::map<std::size_t, Rational>>& constants)
{
    const DiscriminantForm& disc = datum.lattice.discriminant();
    check_discriminant_pair(disc, m, mu);
    PrincipalPart F = poincare_principal_part(disc, m, mu);
    F.constants = constants;
    const std::string prefix = poincare_constant_prefix(m, canonical_mu(disc, mu));
    const auto mu_el = disc.element(mu);

    FormalDivisor out;
    out.add(DivisorKey::Z(disc, m, mu), Rational(1));
    const std::size_t n = datum.n();
    for (const auto& r2 : datum.rank2) {
        if (!r2.perpendicular(mu_el)) {
            continue;
        }
        if (n >= 3) {
            out.add(DivisorKey::BJ(r2.label), mult_J(r2, m, mu));
        } else {
            const Rational prec = m + 1;
            const VVQExpansion lifted = up(theta_definite(r2.D(), prec), r2.quotient);
            out.add(DivisorKey::BJ(r2.label),
                    ct_pairing(multiply(eisenstein_E2(prec), lifted), F, disc, prefix).scaled(Rational(1, 24)));
        }
    }
    for (const auto& c : datum.rank1) {
        if (c.inner_rays.empty() || !c.data.quotient.perpendicular_to_dual_span(mu_el)) {
            continue;
        }
        if (!datum.cusp_space_trivial) {
            throw ComputationRefused("mult_I_omega for Z^tor(" + m.str() + "," + std::to_string(mu) +
                                     ") omits a regularized Petersson product; set cusp_space_trivial to certify it");
        }
        for (const auto& ray : c.inner_rays) {
            const VVQExpansion G = g_plus(datum, to_long(ray.N), m + 1);
            out.add(DivisorKey::BIomega(c.data.label, ray.orbit_label), mult_I_omega(c.data, ray, F, G, prefix));
        }
    }
    return out;
}

BorcherdsDivisor borcherds_divisor(const CompactificationDatum& datum, const PrincipalPart& F)
{
    const DiscriminantForm& disc = datum.lattice.discriminant();
    F.validate(disc);
    if (!F.constants) {
        throw InvalidInput("the Borcherds divisor needs the constant terms c(mu, 0) of F");
    }
    BorcherdsDivisor out;
    out.weight = F.constant(0) / 2;
    out.assumptions = {
        "F is weakly holomorphic of weight 1 - n/2 for the dual Weil representation (Petersson terms vanish)",
        "the character of the Borcherds product is trivial",
        "the listed cusps and inner rays are complete sets of representatives",
    };
    if (datum.n() == 2 && !datum.rank2.empty()) {
        out.assumptions.emplace_back("n = 2: the group ring of Delta_L has no invariant vectors for the dual Weil representation");
    }
    for (const auto& [key, c] : F.negative) {
        out.divisor.add(DivisorKey::Z(disc, key.m, key.mu), Rational(c) / 2);
    }
    for (const auto& r2 : datum.rank2) {
        out.divisor.add(DivisorKey::BJ(r2.label), borcherds_boundary_J(r2, F).value);
    }
    const Rational prec = F.max_order() + 1;
    for (const auto& c : datum.rank1) {
        for (const auto& ray : c.inner_rays) {
            const VVQExpansion G = g_plus(datum, to_long(ray.N), prec);
            out.divisor.add(DivisorKey::BIomega(c.data.label, ray.orbit_label), mult_I_omega(c.data, ray, F, G));
        }
    }
    return out;
}

FormalDivisor serre_relation(const CompactificationDatum& datum, const PrincipalPart& F)
{
    const DiscriminantForm& disc = datum.lattice.discriminant();
    F.validate(disc);
    if (!F.constants) {
        throw InvalidInput("the Serre relation needs the constant terms c(mu, 0) of F");
    }
    FormalDivisor raw;
    std::map<std::string, Rational> weight_of_prefix; // prefix -> sum of c(mu, -m) over mu, -mu
    for (const auto& [key, c] : F.negative) {
        raw += ztor_divisor(datum, key.m, key.mu).scaled(Rational(c));
        weight_of_prefix[poincare_constant_prefix(key.m, canonical_mu(disc, key.mu))] += Rational(c);
    }
    // Each symbol c[m,mu](nu,0) enters with weight(m,mu) * a_nu where a_nu does not
    // depend on (m, mu); the weighted sum of the symbols is 2 c_F(nu, 0).
    FormalDivisor relation;
    for (const auto& [k, form] : raw.terms()) {
        LinearForm resolved(form.constant);
        for (std::size_t nu = 0; nu < disc.order(); ++nu) {
            std::optional<Rational> a;
            for (const auto& [prefix, w] : weight_of_prefix) {
                const Rational s = form.coefficient(constant_symbol(prefix, nu));
                if (s == 0 || w == 0) {
                    continue;
                }
                if (a && *a != s / w) {
                    throw std::logic_error("serre_relation: constant-term coefficients are not proportional");
                }
                a = s / w;
            }
            if (a) {
                resolved.constant += *a * 2 * F.constant(nu);
            }
        }
        relation.add(k, resolved);
    }
    const BorcherdsDivisor bd = borcherds_divisor(datum, F);
    if (!(relation == bd.divisor.scaled(2))) {
        throw InvalidInput("Serre relation " + relation.str() + " differs from twice the Borcherds divisor " +
                           bd.divisor.scaled(2).str() + "; F's constant terms are inconsistent");
    }
    return relation;
}

Rational serre_pairing(const std::map<PrincipalPart::Key, Rational>& a, const PrincipalPart& F)
{
    Rational s = 0;
    for (const auto& [key, value] : a) {
        if (value == 0) {
            continue;
        }
        if (key.m > 0) {
            auto it = F.negative.find(key);
            if (it != F.negative.end()) {
                s += Rational(it->second) * value;
            }
        } else if (key.m == 0) {
            if (!F.constants) {
                throw InvalidInput("serre_pairing: F has no constant terms");
            }
            s += F.constant(key.mu) * value;
        } else {
            const Rational l = -key.m;
            if (l >= F.extended_precision) {
                throw InvalidInput("serre_pairing: F's coefficient at exponent " + l.str() + " is not supplied");
            }
            auto it = F.extended.find(PrincipalPart::Key{key.mu, l});
            if (it != F.extended.end()) {
                s += it->second * value;
            }
        }
    }
    return s;
}

} // namespace tordiv
