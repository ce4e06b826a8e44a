#include "tordiv/isotropic.hpp"

namespace tordiv {

using Index = Eigen::Index;

Rational group_ring_pair(const GroupRingVector& a, const GroupRingVector& b)
{
    if (a.size() != b.size()) {
        throw InvalidInput("group ring vectors over different groups");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

namespace {

/// Calls f on every vector of [-r, r]^n in lexicographic order.
template <typename F>
void for_box(Index n, long r, F&& f)
{
    std::vector<long> k(static_cast<std::size_t>(n), -r);
    IntVector v(n);
    for (;;) {
        for (Index i = 0; i < n; ++i) {
            v(i) = k[static_cast<std::size_t>(i)];
        }
        if (!f(v)) {
            return;
        }
        Index i = n - 1;
        while (i >= 0 && k[static_cast<std::size_t>(i)] == r) {
            k[static_cast<std::size_t>(i)] = -r;
            --i;
        }
        if (i < 0) {
            return;
        }
        ++k[static_cast<std::size_t>(i)];
    }
}

bool integral(const RatVector& v)
{
    for (Index i = 0; i < v.size(); ++i) {
        if (!is_integral(v(i))) {
            return false;
        }
    }
    return true;
}

IntVector to_integer(const RatVector& v)
{
    IntVector out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        if (!is_integral(v(i))) {
            throw std::logic_error("expected an integral vector, got " + format_vector(v));
        }
        out(i) = num(v(i));
    }
    return out;
}

} // namespace

std::vector<IntVector> find_isotropic_primitive(const EvenLattice& lattice, long box)
{
    std::vector<IntVector> out;
    if (lattice.rank() == 0 || box <= 0) {
        return out;
    }
    for_box(static_cast<Index>(lattice.rank()), box, [&](const IntVector& v) {
        Index lead = 0;
        while (lead < v.size() && v(lead) == 0) {
            ++lead;
        }
        if (lead == v.size() || v(lead) < 0) {
            return true;
        }
        if (lattice.norm(v) == 0 && is_primitive(v)) {
            out.push_back(v);
        }
        return true;
    });
    return out;
}

IsotropicQuotient::IsotropicQuotient(const EvenLattice& ambient, IntMatrix iso, std::optional<IntMatrix> lifts,
                                     std::string label)
    : ambient_(ambient), iso_(std::move(iso))
{
    const IntMatrix& g = ambient_.gram();
    const Index n = g.rows(), k = iso_.cols();
    if (iso_.rows() != n) {
        throw InvalidInput("isotropic vectors have the wrong length");
    }
    if (!(iso_.transpose() * g * iso_).isZero()) {
        throw InvalidInput("sublattice is not isotropic");
    }
    if (rank(iso_) != k) {
        throw InvalidInput("isotropic vectors are linearly dependent");
    }
    if (!is_saturated(iso_)) {
        throw InvalidInput("isotropic sublattice is not primitive");
    }
    functionals_ = iso_.transpose() * g;
    const IntMatrix perp = integer_kernel(functionals_);

    const Index q = n - 2 * k;
    auto coords_in_perp = [&](const IntVector& v) {
        auto c = solve_integer(perp, v);
        if (!c) {
            throw InvalidInput("vector " + format_vector(v) + " is not orthogonal to the isotropic sublattice");
        }
        return *c;
    };
    IntMatrix iso_coords(perp.cols(), k);
    for (Index j = 0; j < k; ++j) {
        iso_coords.col(j) = coords_in_perp(iso_.col(j));
    }
    if (lifts) {
        if (lifts->rows() != n || lifts->cols() != q) {
            throw InvalidInput("quotient basis needs " + std::to_string(q) + " vectors of length " + std::to_string(n));
        }
        IntMatrix full(perp.cols(), perp.cols());
        full.leftCols(k) = iso_coords;
        for (Index j = 0; j < q; ++j) {
            full.col(k + j) = coords_in_perp(lifts->col(j));
        }
        if (abs(determinant(full)) != 1) {
            throw InvalidInput("quotient basis together with the isotropic vectors does not span the orthogonal complement");
        }
        lifts_ = *lifts;
    } else {
        const IntMatrix full = complete_to_basis(iso_coords);
        lifts_ = perp * full.rightCols(q);
    }

    quotient_ = EvenLattice(lifts_.transpose() * g * lifts_, std::move(label));
    projector_ = inverse(to_rational(quotient_.gram())) * to_rational(IntMatrix(lifts_.transpose() * g));

    // S_Q cap L^*: with U (G S) V = diag(d), the columns S V diag(d)^{-1}.
    const SmithForm sf = smith_normal_form(g * iso_);
    dual_span_ = to_rational(iso_) * to_rational(sf.V);
    for (Index j = 0; j < k; ++j) {
        dual_span_.col(j) /= Rational(sf.D(j, j));
    }

    const DiscriminantForm& dl = ambient_.discriminant();
    const DiscriminantForm& dq = quotient_.discriminant();
    p_table_.resize(dl.order());
    for (std::size_t i = 0; i < dl.order(); ++i) {
        const RatVector lam = dl.lift(dl.element(i));
        const IntVector t = to_integer(to_rational(functionals_) * lam);
        auto nu = solve_integer(functionals_, t);
        if (!nu) {
            continue;
        }
        const RatVector y = projector_ * RatVector(lam - to_rational(*nu));
        p_table_[i] = dq.reduce(y);
    }
}

RatVector IsotropicQuotient::project(const RatVector& v) const { return projector_ * v; }

RatVector IsotropicQuotient::lift(const RatVector& y) const { return to_rational(lifts_) * y; }

const std::optional<DiscriminantForm::Element>& IsotropicQuotient::p(const DiscriminantForm::Element& mu) const
{
    return p_table_[ambient_.discriminant().index(mu)];
}

bool IsotropicQuotient::perpendicular_to_dual_span(const DiscriminantForm::Element& mu) const
{
    const RatVector lam = ambient_.discriminant().lift(mu);
    const RatVector pairings = dual_span_.transpose() * (to_rational(ambient_.gram()) * lam);
    return integral(pairings);
}

GroupRingVector IsotropicQuotient::up(const GroupRingVector& a) const
{
    const DiscriminantForm& dq = quotient_.discriminant();
    if (a.size() != dq.order()) {
        throw InvalidInput("up: vector is not over the quotient discriminant group");
    }
    GroupRingVector out(p_table_.size(), Rational(0));
    for (std::size_t i = 0; i < p_table_.size(); ++i) {
        if (p_table_[i]) {
            out[i] = a[dq.index(*p_table_[i])];
        }
    }
    return out;
}

GroupRingVector IsotropicQuotient::down(const GroupRingVector& b) const
{
    const DiscriminantForm& dq = quotient_.discriminant();
    if (b.size() != p_table_.size()) {
        throw InvalidInput("down: vector is not over the ambient discriminant group");
    }
    GroupRingVector out(dq.order(), Rational(0));
    for (std::size_t i = 0; i < p_table_.size(); ++i) {
        if (p_table_[i]) {
            out[dq.index(*p_table_[i])] += b[i];
        }
    }
    return out;
}

std::size_t IsotropicQuotient::fiber_size() const
{
    std::size_t defined = 0;
    for (const auto& e : p_table_) {
        defined += e.has_value();
    }
    return defined / quotient_.discriminant().order();
}

bool Rank1CuspData::in_L_star_I(const DiscriminantForm::Element& mu) const
{
    const RatVector lam = ambient().discriminant().lift(mu);
    const Rational t = lam.dot(to_rational(IntVector(ambient().gram() * z)));
    return is_integral(t) && mod(num(t), z_level) == 0;
}

IntVector default_cone_reference(const EvenLattice& K, long max_radius)
{
    const auto n = static_cast<Index>(K.rank());
    for (long r = 1; r <= max_radius; ++r) {
        std::optional<IntVector> found;
        for_box(n, r, [&](const IntVector& v) {
            bool shell = false;
            for (Index i = 0; i < n; ++i) {
                shell = shell || abs(v(i)) == r;
            }
            if (shell && K.norm(v) < 0) {
                found = v;
                return false;
            }
            return true;
        });
        if (found) {
            return *found;
        }
    }
    throw InvalidInput("no negative-norm vector found in '" + K.label() + "'");
}

Rank1CuspData rank1_data(const EvenLattice& lattice, const IntVector& z, const std::optional<IntVector>& cone_reference,
                         const std::optional<IntMatrix>& k_basis, std::string label)
{
    if (z.size() != static_cast<Index>(lattice.rank())) {
        throw InvalidInput("z has the wrong length");
    }
    if (lattice.norm(z) != 0) {
        throw InvalidInput("z = " + format_vector(z) + " is not isotropic");
    }
    if (!is_primitive(z)) {
        throw InvalidInput("z = " + format_vector(z) + " is not primitive");
    }
    Rank1CuspData r;
    r.label = label;
    r.z = z;
    r.quotient = IsotropicQuotient(lattice, IntMatrix(z), k_basis, "K(" + label + ")");
    r.z_level = content(IntVector(lattice.gram() * z));
    const EvenLattice& K = r.K();
    if (cone_reference) {
        if (cone_reference->size() != z.size()) {
            throw InvalidInput("cone_reference has the wrong length");
        }
        if (lattice.pair(*cone_reference, z) != 0) {
            throw InvalidInput("cone_reference is not orthogonal to z");
        }
        r.cone_reference = to_integer(r.quotient.project(to_rational(*cone_reference)));
        if (K.norm(r.cone_reference) >= 0) {
            throw InvalidInput("cone_reference does not have negative norm in K");
        }
    } else if (K.signature().negative > 0) {
        r.cone_reference = default_cone_reference(K);
    } else {
        r.cone_reference = IntVector(0);
    }
    return r;
}

Rank2CuspData rank2_data(const EvenLattice& lattice, const IntVector& z, const IntVector& w,
                         const std::optional<IntMatrix>& d_basis, std::string label)
{
    const auto n = static_cast<Index>(lattice.rank());
    if (z.size() != n || w.size() != n) {
        throw InvalidInput("z, w have the wrong length");
    }
    if (lattice.norm(z) != 0 || lattice.norm(w) != 0 || lattice.pair(z, w) != 0) {
        throw InvalidInput("span(z, w) is not isotropic");
    }
    IntMatrix j(n, 2);
    j.col(0) = z;
    j.col(1) = w;
    if (rank(j) != 2) {
        throw InvalidInput("z and w do not span a rank 2 sublattice");
    }
    if (!is_saturated(j)) {
        throw InvalidInput("span(z, w) is not primitive");
    }
    Rank2CuspData r;
    r.label = label;
    r.z = z;
    r.w = w;
    r.quotient = IsotropicQuotient(lattice, j, d_basis, "D(" + label + ")");
    if (r.D().signature().negative != 0) {
        throw InvalidInput("J^perp / J is not positive definite");
    }
    return r;
}

IntVector boundary_ray(const Rank1CuspData& r1, const Rank2CuspData& r2)
{
    const auto n = r1.z.size();
    IntMatrix j(n, 2);
    j.col(0) = r2.z;
    j.col(1) = r2.w;
    auto c = solve_integer(j, r1.z);
    if (!c) {
        throw InvalidInput("I = span(" + format_vector(r1.z) + ") is not contained in J");
    }
    if (r1.cone_reference.size() == 0) {
        throw InvalidInput("cusp '" + r1.label + "' has no cone reference");
    }
    const IntMatrix basis = complete_to_basis(IntMatrix(*c));
    const IntVector w = j * basis.col(1);
    IntVector omega = make_primitive(to_integer(r1.quotient.project(to_rational(w))));
    if (r1.K().pair(omega, r1.cone_reference) > 0) {
        omega = -omega;
    }
    return omega;
}

bool same_negative_cone(const EvenLattice& K, const IntVector& cone_reference, const RatVector& y)
{
    if (K.norm(y) >= 0) {
        throw InvalidInput("vector " + format_vector(y) + " does not have negative norm");
    }
    return K.pair(y, to_rational(cone_reference)) < 0;
}

bool same_negative_cone(const Rank1CuspData& r1, const RatVector& y)
{
    return same_negative_cone(r1.K(), r1.cone_reference, y);
}

} // namespace tordiv
