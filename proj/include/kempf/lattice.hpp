#pragma once

#include <compare>
#include <utility>
#include <vector>

#include "kempf/group.hpp"
#include "kempf/numeric.hpp"

namespace kempf {

/// Integer point of the cocharacter lattice Y(T) of the fixed diagonal
/// maximal torus. For special-linear factors the entries on that factor's
/// block must sum to zero (checked at construction).
struct TorusCocharacter {
  std::vector<Coord> weights;
  GroupDescriptor group;

  TorusCocharacter(std::vector<Coord> w, GroupDescriptor g);

  bool is_zero() const;
  QVec as_qvec() const;
};

/// Integer weight covector, paired with cocharacters by the dot product.
struct Weight {
  std::vector<Coord> covector;

  explicit Weight(std::vector<Coord> c) : covector(std::move(c)) {}

  QVec as_qvec() const;
  bool operator==(const Weight& other) const { return covector == other.covector; }
  /// Lexicographic; used for deterministic support ordering and tie-breaks.
  bool operator<(const Weight& other) const { return covector < other.covector; }
};

/// Positive definite symmetric integer bilinear form on Y(T), invariant
/// under the Weyl group of the tagged group (blockwise coordinate
/// permutations). Stored with rational entries that are checked to be
/// integers so it composes directly with the rational solvers.
struct LengthForm {
  QMat matrix;
  GroupDescriptor group;

  LengthForm(QMat m, GroupDescriptor g);

  static LengthForm identity(const GroupDescriptor& g);

  long rank() const { return matrix.rows(); }
};

/// Splits off the content: λ = d·μ with μ indivisible (entry gcd 1).
/// Throws ValidationError("ZeroCocharacter", ...) on the zero vector.
std::pair<TorusCocharacter, Int> primitive_part(const TorusCocharacter& lambda);

/// ⟨χ, λ⟩, the exact integer dot product.
Int pairing(const Weight& chi, const TorusCocharacter& lambda);

/// λᵀBλ, a positive integer (returned as a rational for uniformity).
Rat squared_length(const LengthForm& form, const TorusCocharacter& lambda);

/// Σ_{w∈W} wᵀ·seed·w over the blockwise permutation action; summing rather
/// than averaging keeps the matrix integer-valued. The seed must be
/// symmetric positive definite with integer entries.
LengthForm weyl_invariant_form(const QMat& seed, const GroupDescriptor& group);

/// Exact ordering of α₁/√q₁ versus α₂/√q₂ via the cross comparison
/// α₁²·q₂ vs α₂²·q₁, valid because the α are nonnegative.
std::strong_ordering compare_ratios(const Int& alpha1, const Rat& q1,
                                    const Int& alpha2, const Rat& q2);

/// Shared validation helpers.
void require_dimension(size_t got, size_t want, const char* what);
bool is_symmetric(const QMat& m);
bool is_positive_definite(const QMat& m);
bool has_integer_entries(const QMat& m);

}  // namespace kempf
