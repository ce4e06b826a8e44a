#pragma once

// Truncated vector-valued q-expansions with exact coefficients, and the
// specific series (theta functions, E2, Zagier's class number series) built on them.

#include <map>
#include <optional>
#include <vector>

#include "tordiv/isotropic.hpp"

namespace tordiv {

/// Sum over exponents e and components j of c(e, j) q^e e_j.
///
/// Coefficients are complete for every exponent below `precision`; nothing is
/// stored below `floor`; all exponents lie in (1/denominator) Z. The component
/// index set is abstract (0 .. dim-1); callers fix its meaning.
class VVQExpansion {
public:
    using Row = std::vector<Rational>;

    VVQExpansion() = default;
    VVQExpansion(std::size_t dim, Integer denominator, Rational floor, Rational precision);

    static VVQExpansion scalar(Integer denominator, Rational floor, Rational precision)
    {
        return VVQExpansion(1, std::move(denominator), std::move(floor), std::move(precision));
    }
    /// The constant 1 (all components but `component` zero) with the given precision.
    static VVQExpansion unit(std::size_t dim, std::size_t component, Rational precision);

    std::size_t dim() const { return dim_; }
    const Integer& denominator() const { return denominator_; }
    const Rational& floor() const { return floor_; }
    const Rational& precision() const { return precision_; }
    const std::map<Rational, Row>& terms() const { return terms_; }

    /// Adds c to the coefficient at (e, j). Exponents at or above precision are dropped.
    void add_term(const Rational& e, std::size_t j, const Rational& c);
    /// Coefficient at (e, j); PrecisionError when e >= precision.
    Rational coefficient(const Rational& e, std::size_t j = 0) const;

    VVQExpansion truncated(const Rational& precision) const;
    VVQExpansion scaled(const Rational& s) const;

    VVQExpansion& operator+=(const VVQExpansion& o);
    friend VVQExpansion operator+(VVQExpansion a, const VVQExpansion& b) { return a += b; }
    friend VVQExpansion operator-(const VVQExpansion& a, const VVQExpansion& b) { return a + b.scaled(-1); }

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const VVQExpansion& o) const;

private:
    void prune(const Rational& e);

    std::size_t dim_ = 1;
    Integer denominator_ = 1;
    Rational floor_ = 0;
    Rational precision_ = 0;
    std::map<Rational, Row> terms_;
};

/// Sum_j a_j b_j as a scalar series. Precision min(pa + fb, pb + fa).
VVQExpansion pair(const VVQExpansion& a, const VVQExpansion& b);

/// Scalar series times a vector-valued series.
VVQExpansion multiply(const VVQExpansion& scalar, const VVQExpansion& v);

/// Each coefficient times its exponent; exponent-0 terms vanish, so a floor of 0
/// moves to the smallest positive exponent.
VVQExpansion q_d_dq(const VVQExpansion& a);

/// Coefficient of q^0 of a scalar series.
Rational constant_term(const VVQExpansion& a);

/// For a series over X x Y (index x * dim_y + y), applies `up` of the quotient on the
/// X factor (X = Delta_Q, result over Delta_L x Y).
VVQExpansion up_first_factor(const VVQExpansion& a, const IsotropicQuotient& q, std::size_t dim_y);
VVQExpansion up(const VVQExpansion& a, const IsotropicQuotient& q);

/// Contracts the Y factor of a series over X x Y with a series over Y.
VVQExpansion pair_second_factor(const VVQExpansion& a, const VVQExpansion& b);

/// Principal part (plus optional further coefficients) of a form with the dual
/// Weil representation of Delta_L: sum c(mu, -m) q^{-m} e_mu.
struct PrincipalPart {
    struct Key {
        std::size_t mu; // DiscriminantForm index
        Rational m;     // > 0
        bool operator<(const Key& o) const { return mu != o.mu ? mu < o.mu : m < o.m; }
    };
    std::map<Key, Integer> negative;
    /// c(mu, 0) for q(mu) = 0; nullopt when not supplied.
    std::optional<std::map<std::size_t, Rational>> constants;
    /// Further coefficients c(mu, l), l > 0, complete below extended_precision.
    std::map<Key, Rational> extended;
    Rational extended_precision = 0;

    /// Throws InvalidInput on m not congruent to q(mu), asymmetry, or non-positive m.
    void validate(const DiscriminantForm& disc) const;

    Rational constant(std::size_t mu) const;
    bool has_constants() const { return constants.has_value(); }
    Rational max_order() const; // largest m, or 0

    /// The known part of F as an expansion over Delta_L.
    VVQExpansion to_expansion(const DiscriminantForm& disc) const;

    PrincipalPart operator+(const PrincipalPart& o) const;
    PrincipalPart scaled(const Integer& s) const;
    bool is_zero() const;
};

/// Theta series of a positive definite lattice over its discriminant group, complete below prec.
VVQExpansion theta_definite(const EvenLattice& D, const Rational& prec);

/// Theta series of the rank 1 lattice of norm 2N, components l mod 2N.
VVQExpansion theta_N(long N, const Rational& prec);

/// Theta_{K, omega} over Delta_K x Z/2N (index delta * 2N + r), complete below prec.
VVQExpansion theta_K_omega(const Rank1CuspData& r1, const IntVector& omega, const Rational& prec);

/// 1 - 24 sum sigma_1(n) q^n.
VVQExpansion eisenstein_E2(const Rational& prec);

/// Hurwitz class number; H(0) = -1/12.
Rational hurwitz_H(long d);

/// Class number series over Z/2N: component r carries H(d) q^{d/4N} for d = -r^2 mod 4N.
/// N must be 1 or prime.
VVQExpansion zagier_plus(long N, const Rational& prec);

bool is_prime(long n);

} // namespace tordiv
