#pragma once

// Rational polyhedral cones and fans in a Lorentzian K, given by orbit
// representatives under explicit generators of Gamma_K.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tordiv/lattice.hpp"

namespace tordiv {

struct RationalCone {
    std::vector<IntVector> generators; // primitive, on distinct rays
    std::string label;

    Eigen::Index ambient_dim() const;
    IntMatrix matrix() const; // generators as columns
    /// Sorted generators; equal keys mean equal cones for simplicial input.
    std::vector<IntVector> key() const;
};

/// Validates primitivity and distinct rays. Throws InvalidInput.
RationalCone make_cone(std::vector<IntVector> generators, std::string label, Eigen::Index ambient_dim);

/// Some x with A x <= b (exact Fourier-Motzkin elimination), or nothing when infeasible.
std::optional<RatVector> fourier_motzkin(const RatMatrix& A, const RatVector& b);

Eigen::Index cone_dim(const RationalCone& c);
/// nu with (nu, omega_j) >= 1 for all generators, when one exists.
std::optional<RatVector> strong_convexity_witness(const RationalCone& c);
bool is_strongly_convex(const RationalCone& c);
bool is_simplicial(const RationalCone& c);
bool is_smooth(const RationalCone& c);
/// All 2^d faces of a simplicial cone, smallest first ({0} has no generators).
std::vector<RationalCone> faces(const RationalCone& c);
bool cone_contains(const RationalCone& c, const RatVector& y);
RationalCone transform(const IntMatrix& g, const RationalCone& c);

struct FanValidation {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Face closure (optional) and pairwise intersections being common faces, for simplicial cones.
FanValidation fan_validate(const std::vector<RationalCone>& cones, bool require_face_closure = true);

struct FanByOrbits {
    std::string lattice_label;
    IntMatrix gram;
    IntVector cone_reference;
    std::vector<IntMatrix> group_generators;
    std::vector<IntVector> isotropic_rays;
    std::vector<RationalCone> cones;
    int word_bound = 12;

    /// Gram, generators (isometries preserving C) and cones. Throws InvalidInput.
    void validate() const;
    Eigen::Index rank() const { return gram.rows(); }
};

/// Group elements reachable by words of length <= bound in the generators and
/// their inverses, deduplicated, in order of first appearance (BFS).
struct GroupBall {
    std::vector<IntMatrix> elements;
    std::vector<int> word_length;
};
GroupBall group_ball(const FanByOrbits& fan, int bound);

struct Stabilizer {
    std::vector<IntMatrix> elements;
    std::size_t order = 0;
    bool closed = false; // found set closed under composition
};
Stabilizer stabilizer(const RationalCone& c, const FanByOrbits& fan);
Stabilizer stabilizer(const RationalCone& c, const GroupBall& ball);

struct OrbitPartition {
    std::vector<std::size_t> orbit_of;       // per input cone
    std::vector<std::size_t> representatives; // first member of each orbit
    std::vector<std::string> labels;          // per orbit
};
OrbitPartition orbit_classify(const std::vector<RationalCone>& cones, const GroupBall& ball);
OrbitPartition orbit_classify(const std::vector<RationalCone>& cones, const FanByOrbits& fan);

struct RayDatum {
    IntVector omega;
    bool isotropic = false;
    Integer N = 0; // omega^2 = -2N for inner rays
    std::string orbit_label;
};

struct RayClassification {
    std::vector<RayDatum> rays;
    std::vector<std::string> violations;
    std::vector<RayDatum> inner() const;
};
RayClassification ray_classify(const FanByOrbits& fan);
RayClassification ray_classify(const FanByOrbits& fan, const GroupBall& ball);

struct AdmissibilityReport {
    bool invariance = false;
    bool coverage = false;
    bool boundary = false;
    std::size_t samples = 0;
    std::vector<std::string> failures;
    bool ok() const { return invariance && coverage && boundary; }
};
AdmissibilityReport admissibility_report(const FanByOrbits& fan, std::size_t samples, std::uint64_t seed);

/// (nu, omega) for nu in the dual coordinates. omega must be primitive.
Integer ord_along_ray(const IntVector& nu, const IntVector& omega);
/// kappa_i (dual coordinates) with (kappa_i, omega_j) = delta_ij.
std::vector<IntVector> dual_basis_smooth_cone(const RationalCone& c);
Eigen::Index orbit_dim(const RationalCone& c, Eigen::Index lattice_rank);

/// M -> g M g^{-1} on traceless matrices [[a, b], [c, -a]] in coordinates (a, b, c); det g = 1.
IntMatrix traceless_conjugation(const IntMatrix& g);

} // namespace tordiv
