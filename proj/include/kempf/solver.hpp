#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "kempf/lattice.hpp"

namespace kempf {

/// Torus-weight decomposition of a point of a representation: finitely many
/// weight covectors with nonzero rational coefficients. For special-linear
/// factors, covectors are reduced to a canonical representative modulo the
/// all-ones vector of the factor's block (those shifts pair to zero with
/// every cocharacter of the factor) and congruent entries are merged.
struct WeightedPoint {
  std::map<Weight, Rat> components;
  GroupDescriptor group;

  WeightedPoint(std::vector<std::pair<Weight, Rat>> entries, GroupDescriptor g);

  bool empty() const { return components.empty(); }
  std::vector<Weight> support() const;
};

/// The parabolic P_λ of a diagonal cocharacter, recorded per product
/// component as the coordinate classes of equal λ-weight in strictly
/// decreasing weight order. The classes are the Levi blocks of L_λ; the
/// successive unions give the stabilized flag.
struct ParabolicDescriptor {
  struct ComponentFlag {
    std::vector<Coord> weights;             // strictly decreasing
    std::vector<std::vector<int>> classes;  // ambient coordinate classes
    bool operator==(const ComponentFlag&) const = default;
  };
  std::vector<ComponentFlag> components;
  bool operator==(const ParabolicDescriptor&) const = default;
};

ParabolicDescriptor parabolic_of(const TorusCocharacter& lambda);

/// Result of a destabilization query that found a destabilizing direction.
struct OptimalClassReport {
  Rat optimal_ratio_sq;               // (α/∥λ∥)² at the maximum
  TorusCocharacter primitive_optimal;
  Int alpha_at_primitive;             // min over support of ⟨χ, primitive⟩, > 0
  QVec min_norm_point;                // closest point to 0 of the identified hull
  std::vector<std::pair<Weight, Rat>> certificate;  // convex combination giving it
  ParabolicDescriptor parabolic;
};

/// 0 lies in the hull of the identified support points: no cocharacter of
/// the (constrained) lattice drives the point to 0. The certificate is the
/// convex combination of support weights whose identified points sum to 0.
struct SemistableCertificate {
  std::vector<std::pair<Weight, Rat>> certificate;
};

using TorusOptimalResult = std::variant<OptimalClassReport, SemistableCertificate>;

/// True iff ⟨χ, λ⟩ ≥ 0 for every support weight, i.e. lim_{t→0} λ(t)·x exists.
bool limit_exists(const WeightedPoint& x, const TorusCocharacter& lambda);

/// Order of vanishing of t ↦ λ(t)·x at t = 0: the support minimum of
/// ⟨χ, λ⟩ when positive, and 0 when the minimum is 0 (the limit exists but
/// is a nonzero point).
Int alpha(const WeightedPoint& x, const TorusCocharacter& lambda);

/// Output of the exact minimum-norm-point computation.
struct MinNormResult {
  QVec point;  // p*, in ambient coordinates
  std::vector<std::pair<Weight, Rat>> certificate;
  bool semistable() const;
};

/// B-norm-minimizing point of conv{B⁻¹χ : χ ∈ support} by Wolfe's algorithm
/// in exact rational arithmetic. By duality, max_{λ≠0} min_χ⟨χ,λ⟩/∥λ∥_B
/// equals ∥p*∥_B, attained along the ray of p*; p* = 0 signals
/// semistability.
MinNormResult min_norm_point(const std::vector<Weight>& support, const LengthForm& form);

/// Same, with the identified points first B-orthogonally projected onto the
/// subspace {λ : Cλ = 0} (rows C are integer constraint covectors). This is
/// the restriction of the max-min problem to a cocharacter sublattice.
MinNormResult min_norm_point_constrained(const std::vector<Weight>& support,
                                         const LengthForm& form,
                                         const std::vector<std::vector<Coord>>& constraints);

/// Kempf maximum of α(λ)/∥λ∥ over the cocharacter lattice of x's group
/// (sum-zero rows are added automatically for special-linear factors).
TorusOptimalResult torus_optimal(const WeightedPoint& x, const LengthForm& form);

/// Same over the sublattice cut out by additional integer constraint rows;
/// used for subgroup-restricted optimization.
TorusOptimalResult torus_optimal_constrained(const WeightedPoint& x, const LengthForm& form,
                                             const std::vector<std::vector<Coord>>& constraints);

/// Exhaustive lattice search over the box [−bound, bound]^rank, the
/// independent verification route for the solver.
struct OracleResult {
  Rat max_ratio_sq;  // 0 when no λ in the box has positive α
  std::vector<std::vector<Coord>> primitive_argmax;  // deduplicated, sorted
};

OracleResult brute_force_oracle(const WeightedPoint& x, const LengthForm& form, int bound);

OracleResult brute_force_oracle_constrained(const WeightedPoint& x, const LengthForm& form,
                                            int bound,
                                            const std::vector<std::vector<Coord>>& constraints);

}  // namespace kempf
