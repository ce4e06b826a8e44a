#include "tordiv/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace tordiv {

using Index = Eigen::Index;

Signature gram_signature(const IntMatrix& gram)
{
    if (gram.rows() != gram.cols()) {
        throw InvalidInput("gram matrix is not square");
    }
    RatMatrix A = to_rational(gram);
    Signature sig;
    std::vector<Index> live;
    for (Index i = 0; i < A.rows(); ++i) {
        live.push_back(i);
    }
    auto remove = [&](Index i) { live.erase(std::find(live.begin(), live.end(), i)); };

    while (!live.empty()) {
        Index piv = -1;
        for (Index i : live) {
            if (A(i, i) != 0) {
                piv = i;
                break;
            }
        }
        if (piv >= 0) {
            const Rational a = A(piv, piv);
            (a > 0 ? sig.positive : sig.negative) += 1;
            remove(piv);
            for (Index i : live) {
                for (Index j : live) {
                    A(i, j) -= A(i, piv) * A(piv, j) / a;
                }
            }
            continue;
        }
        // All remaining diagonal entries vanish: split off a hyperbolic block.
        Index bi = -1, bj = -1;
        for (Index i : live) {
            for (Index j : live) {
                if (i != j && A(i, j) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
            }
            if (bi >= 0) {
                break;
            }
        }
        if (bi < 0) {
            throw InvalidInput("degenerate gram matrix");
        }
        sig.positive += 1;
        sig.negative += 1;
        const Rational b = A(bi, bj);
        remove(bi);
        remove(bj);
        // Schur complement against [[0, b], [b, 0]], whose inverse is [[0, 1/b], [1/b, 0]].
        for (Index i : live) {
            for (Index j : live) {
                A(i, j) -= (A(i, bi) * A(bj, j) + A(i, bj) * A(bi, j)) / b;
            }
        }
    }
    return sig;
}

DiscriminantForm::DiscriminantForm(const IntMatrix& gram) : gram_(gram)
{
    const Index n = gram.rows();
    if (n == 0) {
        lift_basis_ = RatMatrix(0, 0);
        reduce_rows_ = RatMatrix(0, 0);
        return;
    }
    SmithForm sf = smith_normal_form(gram);
    std::vector<Index> keep;
    for (Index i = 0; i < n; ++i) {
        if (sf.D(i, i) == 0) {
            throw InvalidInput("degenerate gram matrix");
        }
        if (sf.D(i, i) != 1) {
            keep.push_back(i);
        }
    }
    // G = U^{-1} D V^{-1}, so L^* = G^{-1} Z^n = V D^{-1} Z^n.
    const RatMatrix vinv = inverse(to_rational(sf.V));
    lift_basis_ = RatMatrix(n, static_cast<Index>(keep.size()));
    reduce_rows_ = RatMatrix(static_cast<Index>(keep.size()), n);
    for (std::size_t c = 0; c < keep.size(); ++c) {
        const Index i = keep[c];
        const Integer d = sf.D(i, i);
        orders_.push_back(to_long(d));
        order_ *= static_cast<std::size_t>(to_long(d));
        lift_basis_.col(static_cast<Index>(c)) = to_rational(IntVector(sf.V.col(i))) / Rational(d);
        reduce_rows_.row(static_cast<Index>(c)) = vinv.row(i) * Rational(d);
    }
}

std::size_t DiscriminantForm::index(const Element& e) const
{
    if (!is_valid(e)) {
        throw InvalidInput("element does not belong to the discriminant group");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(e[i]);
    }
    return idx;
}

DiscriminantForm::Element DiscriminantForm::element(std::size_t idx) const
{
    Element e(orders_.size(), 0);
    for (std::size_t k = orders_.size(); k-- > 0;) {
        const auto d = static_cast<std::size_t>(orders_[k]);
        e[k] = static_cast<long>(idx % d);
        idx /= d;
    }
    return e;
}

std::vector<DiscriminantForm::Element> DiscriminantForm::elements() const
{
    std::vector<Element> out;
    out.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) {
        out.push_back(element(i));
    }
    return out;
}

DiscriminantForm::Element DiscriminantForm::add(const Element& a, const Element& b) const
{
    Element out(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        out[i] = mod(a[i] + b[i], orders_[i]);
    }
    return out;
}

DiscriminantForm::Element DiscriminantForm::negate(const Element& a) const
{
    Element out(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        out[i] = mod(-a[i], orders_[i]);
    }
    return out;
}

bool DiscriminantForm::is_valid(const Element& e) const
{
    if (e.size() != orders_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] >= orders_[i]) {
            return false;
        }
    }
    return true;
}

RatVector DiscriminantForm::lift(const Element& e) const
{
    if (!is_valid(e)) {
        throw InvalidInput("element does not belong to the discriminant group");
    }
    RatVector x = RatVector::Zero(gram_.rows());
    for (std::size_t i = 0; i < e.size(); ++i) {
        x += lift_basis_.col(static_cast<Index>(i)) * Rational(e[i]);
    }
    for (Index i = 0; i < x.size(); ++i) {
        x(i) = mod1(x(i));
    }
    return x;
}

bool DiscriminantForm::in_dual(const RatVector& v) const
{
    RatVector gv = to_rational(gram_) * v;
    for (Index i = 0; i < gv.size(); ++i) {
        if (!is_integral(gv(i))) {
            return false;
        }
    }
    return true;
}

DiscriminantForm::Element DiscriminantForm::reduce(const RatVector& v) const
{
    if (v.size() != gram_.rows() || !in_dual(v)) {
        throw InvalidInput("vector is not in the dual lattice");
    }
    Element e(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        const Rational u = reduce_rows_.row(static_cast<Index>(i)).dot(v);
        e[i] = to_long(mod(num(u), Integer(orders_[i])));
    }
    return e;
}

Rational DiscriminantForm::q(const Element& e) const
{
    RatVector x = lift(e);
    return mod1(x.dot(to_rational(gram_) * x) / 2);
}

Rational DiscriminantForm::b(const Element& a, const Element& c) const
{
    RatVector x = lift(a), y = lift(c);
    return mod1(x.dot(to_rational(gram_) * y));
}

Integer DiscriminantForm::level() const
{
    Integer l = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        Element gi = zero();
        gi[i] = 1;
        l = lcm(l, den(q(gi)));
        for (std::size_t j = i + 1; j < orders_.size(); ++j) {
            Element gj = zero();
            gj[j] = 1;
            l = lcm(l, den(b(gi, gj)));
        }
    }
    return l;
}

EvenLattice::EvenLattice(IntMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label))
{
    if (gram_.rows() != gram_.cols()) {
        throw InvalidInput("gram matrix of '" + label_ + "' is not square");
    }
    for (Index i = 0; i < gram_.rows(); ++i) {
        if (gram_(i, i) % 2 != 0) {
            throw InvalidInput("gram matrix of '" + label_ + "' has odd diagonal entry at " + std::to_string(i));
        }
        for (Index j = 0; j < i; ++j) {
            if (gram_(i, j) != gram_(j, i)) {
                throw InvalidInput("gram matrix of '" + label_ + "' is not symmetric");
            }
        }
    }
    determinant_ = tordiv::determinant(gram_);
    if (determinant_ == 0) {
        throw InvalidInput("gram matrix of '" + label_ + "' is degenerate");
    }
    signature_ = gram_signature(gram_);
    discriminant_ = std::make_shared<DiscriminantForm>(gram_);
}

EvenLattice EvenLattice::hyperbolic_plane() { return EvenLattice(int_matrix({{0, 1}, {1, 0}}), "U"); }

EvenLattice EvenLattice::diagonal(const std::vector<long>& entries, std::string label)
{
    const auto n = static_cast<Index>(entries.size());
    IntMatrix g = IntMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        g(i, i) = entries[static_cast<std::size_t>(i)];
    }
    return EvenLattice(g, std::move(label));
}

EvenLattice EvenLattice::direct_sum(const std::vector<EvenLattice>& parts, std::string label)
{
    Index n = 0;
    for (const auto& p : parts) {
        n += static_cast<Index>(p.rank());
    }
    IntMatrix g = IntMatrix::Zero(n, n);
    Index off = 0;
    for (const auto& p : parts) {
        const auto r = static_cast<Index>(p.rank());
        g.block(off, off, r, r) = p.gram();
        off += r;
    }
    return EvenLattice(g, std::move(label));
}

namespace {

struct Enumerator {
    const Index n;
    std::vector<Rational> d;              // pivots of G = R^T diag(d) R
    std::vector<std::vector<Rational>> r; // r[i][j], j > i, unit upper triangular
    RatVector shift;
    Rational limit;
    RatVector x;
    std::vector<ShortVector> out;
    const RatMatrix& gram;

    Enumerator(const RatMatrix& g, const Rational& lim, const RatVector& s)
        : n(g.rows()), d(static_cast<std::size_t>(n)),
          r(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n))), shift(s), limit(lim),
          x(s), gram(g)
    {
        // Exact LDL^T. A symmetric matrix is positive definite iff all pivots are positive.
        RatMatrix A = g;
        for (Index i = 0; i < n; ++i) {
            const Rational p = A(i, i);
            if (p <= 0) {
                throw InvalidInput("gram matrix is not positive definite");
            }
            d[static_cast<std::size_t>(i)] = p;
            for (Index j = i + 1; j < n; ++j) {
                r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = A(i, j) / p;
            }
            for (Index j = i + 1; j < n; ++j) {
                for (Index k = i + 1; k < n; ++k) {
                    A(j, k) -= A(j, i) * A(i, k) / p;
                }
            }
        }
    }

    void run(Index i, const Rational& remaining)
    {
        if (i < 0) {
            out.push_back(ShortVector{x, limit - remaining});
            return;
        }
        const auto ui = static_cast<std::size_t>(i);
        Rational c = 0;
        for (Index j = i + 1; j < n; ++j) {
            c -= r[ui][static_cast<std::size_t>(j)] * x(j);
        }
        // d_i (x_i - c)^2 <= remaining, x_i = shift_i + k.
        const double centre = static_cast<double>(c - shift(i));
        const double radius = std::sqrt(std::max(0.0, static_cast<double>(remaining / d[ui])));
        const long lo = static_cast<long>(std::floor(centre - radius)) - 2;
        const long hi = static_cast<long>(std::ceil(centre + radius)) + 2;
        for (long k = lo; k <= hi; ++k) {
            const Rational xi = shift(i) + Rational(k);
            const Rational t = xi - c;
            const Rational used = d[ui] * t * t;
            if (used > remaining) {
                continue;
            }
            x(i) = xi;
            run(i - 1, remaining - used);
        }
        x(i) = shift(i);
    }
};

} // namespace

std::vector<ShortVector> short_vectors(const RatMatrix& gram, const Rational& bound, const RatVector& shift)
{
    if (gram.rows() != gram.cols() || shift.size() != gram.rows()) {
        throw InvalidInput("short_vectors: dimension mismatch");
    }
    if (bound < 0) {
        return {};
    }
    Enumerator en(gram, 2 * bound, shift);
    en.run(gram.rows() - 1, 2 * bound);
    for (auto& sv : en.out) {
        sv.norm = sv.vector.dot(gram * sv.vector);
    }
    std::sort(en.out.begin(), en.out.end(),
              [](const ShortVector& a, const ShortVector& b) { return lex_less(a.vector, b.vector); });
    return std::move(en.out);
}

std::vector<ShortVector> short_vectors(const IntMatrix& gram, const Rational& bound, const RatVector& shift)
{
    return short_vectors(to_rational(gram), bound, shift);
}

Integer coset_representation_count(const EvenLattice& lattice, const DiscriminantForm::Element& coset,
                                   const Rational& m)
{
    if (!lattice.is_positive_definite()) {
        throw InvalidInput("coset_representation_count needs a positive definite lattice");
    }
    if (m < 0) {
        return 0;
    }
    const RatVector shift = lattice.discriminant().lift(coset);
    Integer count = 0;
    for (const auto& sv : short_vectors(lattice.gram(), m, shift)) {
        if (sv.norm == 2 * m) {
            ++count;
        }
    }
    return count;
}

} // namespace tordiv
