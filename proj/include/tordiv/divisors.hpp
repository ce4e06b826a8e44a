#pragma once

// Boundary multiplicities, toroidal special divisors Z^tor(m, mu), Borcherds
// product divisors and the Serre duality relation, all with exact coefficients.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tordiv/fan.hpp"
#include "tordiv/qseries.hpp"

namespace tordiv {

/// constant + sum coeff * symbol, for coefficients that depend on unsupplied
/// constant terms of an input form.
struct LinearForm {
    Rational constant = 0;
    std::map<std::string, Rational> symbols;

    LinearForm() = default;
    LinearForm(Rational c) : constant(std::move(c)) {} // NOLINT(google-explicit-constructor)
    static LinearForm symbol(const std::string& name, const Rational& coeff = 1);

    bool is_zero() const { return constant == 0 && symbols.empty(); }
    bool is_constant() const { return symbols.empty(); }
    Rational coefficient(const std::string& name) const;

    LinearForm& operator+=(const LinearForm& o);
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    LinearForm scaled(const Rational& s) const;
    friend LinearForm operator-(const LinearForm& a) { return a.scaled(-1); }
    bool operator==(const LinearForm& o) const = default;
    std::string str() const;
};

struct DivisorKey {
    enum class Type { Z, BJ, BIomega };
    Type type = Type::Z;
    Rational m = 0;     // Z only
    std::size_t mu = 0; // Z only; the smaller index of mu, -mu
    std::string cusp;   // BJ, BIomega
    std::string ray;    // BIomega: ray orbit label

    static DivisorKey Z(const DiscriminantForm& disc, const Rational& m, std::size_t mu);
    static DivisorKey BJ(const std::string& label);
    static DivisorKey BIomega(const std::string& cusp, const std::string& ray);

    bool operator<(const DivisorKey& o) const;
    bool operator==(const DivisorKey& o) const = default;
    std::string str() const;
};

class FormalDivisor {
public:
    void add(const DivisorKey& key, const LinearForm& c);
    LinearForm coefficient(const DivisorKey& key) const;
    const std::map<DivisorKey, LinearForm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    FormalDivisor& operator+=(const FormalDivisor& o);
    friend FormalDivisor operator+(FormalDivisor a, const FormalDivisor& b) { return a += b; }
    FormalDivisor scaled(const Rational& s) const;
    bool operator==(const FormalDivisor& o) const { return terms_ == o.terms_; }
    std::string str() const;

private:
    std::map<DivisorKey, LinearForm> terms_;
};

struct Rank1Cusp {
    Rank1CuspData data;
    std::optional<FanByOrbits> fan; // K coordinates of data
    std::vector<RayDatum> inner_rays;
};

struct CompactificationDatum {
    EvenLattice lattice;
    std::vector<Rank1Cusp> rank1;
    std::vector<Rank2CuspData> rank2;
    bool cusp_space_trivial = false;
    std::map<long, VVQExpansion> g_plus_overrides; // over Z/2N

    /// Signature (n, 2) with n >= 1, cusp lattices, fan Grams, inner rays, and the
    /// isotropic rays of every fan arising as boundary rays. Throws InvalidInput.
    void validate() const;
    /// Classifies the rays of every attached fan and stores the inner ones.
    void classify_rays();
    std::size_t n() const;
};

/// G_N^+ for xi G_N = -(sqrt N / 8 pi) Theta_N: the negated class number series for
/// N = 1 or prime, otherwise an override. ComputationRefused when neither applies.
VVQExpansion g_plus(const CompactificationDatum& datum, long N, const Rational& prec);
VVQExpansion builtin_g_plus(long N, const Rational& prec);

/// CT(<X, F>) for X over Delta_L with non-negative exponents. Missing constant
/// terms of F become the symbols `prefix(nu,0)`.
LinearForm ct_pairing(const VVQExpansion& X, const PrincipalPart& F, const DiscriminantForm& disc,
                      const std::string& prefix = "c");

/// q^{-m} (e_mu + e_{-mu}); constants left unset.
PrincipalPart poincare_principal_part(const DiscriminantForm& disc, const Rational& m, std::size_t mu);

Rational mult_J(const Rank2CuspData& r2, const Rational& m, std::size_t mu);

/// -CT(<< up(Theta_{K,omega}), G_plus >_N, F >_L).
LinearForm mult_I_omega(const Rank1CuspData& r1, const RayDatum& ray, const PrincipalPart& F,
                        const VVQExpansion& G_plus, const std::string& prefix = "c");

struct BoundaryJ {
    Rational value;
    std::optional<Rational> theta_derivative_path; // n >= 3
    std::optional<Rational> e2_path;               // constants supplied
};
/// Both paths when available; InvalidInput when they disagree.
BoundaryJ borcherds_boundary_J(const Rank2CuspData& r2, const PrincipalPart& F);

/// Symbols for the constant terms of F_{m, mu}.
std::string poincare_constant_prefix(const Rational& m, std::size_t mu);

FormalDivisor ztor_divisor(const CompactificationDatum& datum, const Rational& m, std::size_t mu,
                           const std::optional<std::map<std::size_t, Rational>>& constants = std::nullopt);

struct BorcherdsDivisor {
    Rational weight;
    FormalDivisor divisor;
    std::vector<std::string> assumptions;
};
BorcherdsDivisor borcherds_divisor(const CompactificationDatum& datum, const PrincipalPart& F);

/// sum c(mu, -m) Z^tor(m, mu); checked against twice the Borcherds divisor.
FormalDivisor serre_relation(const CompactificationDatum& datum, const PrincipalPart& F);

/// sum c(mu, -l) a(mu, l) over the support of a.
Rational serre_pairing(const std::map<PrincipalPart::Key, Rational>& a, const PrincipalPart& F);

} // namespace tordiv
