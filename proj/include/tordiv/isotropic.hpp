#pragma once

// Primitive isotropic sublattices I (rank 1) and J (rank 2) of L, the quotients
// K = I^perp / I and D = J^perp / J, the projections p_K, p_D and the arrow
// operators between group rings.

#include <optional>
#include <string>
#include <vector>

#include "tordiv/lattice.hpp"

namespace tordiv {

/// Dense element of Q[Delta], indexed by DiscriminantForm::index.
using GroupRingVector = std::vector<Rational>;

/// Sum of a_d b_d.
Rational group_ring_pair(const GroupRingVector& a, const GroupRingVector& b);

/// Primitive z with z^2 = 0 in the coordinate box [-box, box]^n, first non-zero
/// coordinate positive, in lexicographic order.
std::vector<IntVector> find_isotropic_primitive(const EvenLattice& lattice, long box);

/// Q = S^perp_L / S for a primitive isotropic S (columns of `iso`), with
/// lifts of a basis of Q in L and the induced projection Delta_L -> Delta_Q.
class IsotropicQuotient {
public:
    IsotropicQuotient() = default;
    /// `lifts`, when given, are vectors of S^perp_L (columns) that together with S
    /// form a basis of S^perp_L; otherwise a basis is chosen by HNF.
    IsotropicQuotient(const EvenLattice& ambient, IntMatrix iso, std::optional<IntMatrix> lifts, std::string label);

    const EvenLattice& ambient() const { return ambient_; }
    const EvenLattice& quotient() const { return quotient_; }
    const IntMatrix& isotropic_basis() const { return iso_; }
    const IntMatrix& lifts() const { return lifts_; }

    /// Quotient coordinates of a vector of S^perp (rational or integral), via the
    /// pairings with the lifted basis.
    RatVector project(const RatVector& v) const;
    /// The representative sum of lifts for quotient coordinates y.
    RatVector lift(const RatVector& y) const;

    /// Class of mu in Delta_Q, or nothing when mu is not in L + S^perp_{L*}.
    const std::optional<DiscriminantForm::Element>& p(const DiscriminantForm::Element& mu) const;
    const std::optional<DiscriminantForm::Element>& p(std::size_t mu_index) const { return p_table_[mu_index]; }

    /// mu pairs integrally with S_{L*} = S_Q cap L^*.
    bool perpendicular_to_dual_span(const DiscriminantForm::Element& mu) const;
    /// Basis (columns) of S_Q cap L^*.
    const RatMatrix& dual_span() const { return dual_span_; }

    GroupRingVector up(const GroupRingVector& a) const;
    GroupRingVector down(const GroupRingVector& b) const;
    /// |p^{-1}(delta)|, the same for every delta.
    std::size_t fiber_size() const;

private:
    EvenLattice ambient_;
    EvenLattice quotient_;
    IntMatrix iso_;
    IntMatrix lifts_;
    IntMatrix functionals_; // iso^T G
    RatMatrix projector_;   // G_Q^{-1} lifts^T G
    RatMatrix dual_span_;
    std::vector<std::optional<DiscriminantForm::Element>> p_table_;
};

struct Rank1CuspData {
    std::string label;
    IsotropicQuotient quotient; // K with its lifts
    IntVector z;
    Integer z_level = 1;        // gcd of (z, L): I_{L*} = Z z / z_level
    IntVector cone_reference;   // K coordinates, negative norm

    const EvenLattice& ambient() const { return quotient.ambient(); }
    const EvenLattice& K() const { return quotient.quotient(); }
    std::optional<DiscriminantForm::Element> p_K(const DiscriminantForm::Element& mu) const { return quotient.p(mu); }

    /// mu in L^*_I / L, decided directly from (lambda, z) against (L, z).
    bool in_L_star_I(const DiscriminantForm::Element& mu) const;
};

struct Rank2CuspData {
    std::string label;
    IsotropicQuotient quotient; // D with its lifts
    IntVector z;
    IntVector w;

    const EvenLattice& ambient() const { return quotient.ambient(); }
    const EvenLattice& D() const { return quotient.quotient(); }
    std::optional<DiscriminantForm::Element> p_D(const DiscriminantForm::Element& mu) const { return quotient.p(mu); }
    /// (mu, J_{L*}) in Z.
    bool perpendicular(const DiscriminantForm::Element& mu) const { return quotient.perpendicular_to_dual_span(mu); }
};

/// `cone_reference` (L coordinates, in I^perp) defaults to the first negative-norm
/// vector of K found by a deterministic shell search. `k_basis` optionally fixes the
/// lifts of the K basis.
Rank1CuspData rank1_data(const EvenLattice& lattice, const IntVector& z,
                         const std::optional<IntVector>& cone_reference = std::nullopt,
                         const std::optional<IntMatrix>& k_basis = std::nullopt, std::string label = "I");

Rank2CuspData rank2_data(const EvenLattice& lattice, const IntVector& z, const IntVector& w,
                         const std::optional<IntMatrix>& d_basis = std::nullopt, std::string label = "J");

/// First negative-norm vector of a Lorentzian lattice in shells of growing sup-norm.
IntVector default_cone_reference(const EvenLattice& K, long max_radius = 8);

/// Generator of J/I in K on the closure of the cone C.
IntVector boundary_ray(const Rank1CuspData& r1, const Rank2CuspData& r2);

/// (y, cone_reference) < 0 for y^2 < 0.
bool same_negative_cone(const Rank1CuspData& r1, const RatVector& y);
bool same_negative_cone(const EvenLattice& K, const IntVector& cone_reference, const RatVector& y);

} // namespace tordiv
