#pragma once

#include "kempf/nilpotent.hpp"

namespace kempf {

/// A reductive subgroup H of the ambient group given constructively, with
/// the sublattice Y(H) ∩ Y(T) recorded as integer linear constraints on
/// cocharacter weight vectors.
struct SubgroupDescriptor {
  enum class Kind { Full, Levi, CentralizerOfSemisimple, DiagonalEmbedding };

  explicit SubgroupDescriptor(GroupDescriptor g) : ambient(std::move(g)) {}

  Kind kind = Kind::Full;
  GroupDescriptor ambient;
  /// For Levi / CentralizerOfSemisimple: the coordinate blocks of H
  /// (arbitrary subsets, each within one ambient component). For Full: the
  /// ambient component blocks.
  std::vector<std::vector<int>> blocks;
  /// For CentralizerOfSemisimple: the diagonal of the centralized element.
  QVec semisimple;
  /// For DiagonalEmbedding: the number of equal ambient components the
  /// embedded copy spans.
  int copies = 1;

  static SubgroupDescriptor full(GroupDescriptor g);
  static SubgroupDescriptor levi(GroupDescriptor g, std::vector<std::vector<int>> blocks);
  /// Ambient must be a product of `copies` identical components; H is one
  /// copy embedded as (h, …, h).
  static SubgroupDescriptor diagonal_embedding(GroupDescriptor g, int copies);

  /// Rows C with Y(H) ∩ Y(T) = {λ ∈ Y(T) : Cλ = 0}. Empty whenever H
  /// contains the full diagonal torus (Full, Levi, centralizer kinds).
  std::vector<std::vector<Coord>> lattice_constraints() const;

  /// Structural test for e ∈ Lie(H).
  bool lie_contains(const MatrixElement& e) const;

  std::string describe() const;
};

/// H = C_G(K)⁰ for a diagonal semisimple element (or diagonal torus given
/// by generators): the block subgroup of coordinates with equal
/// eigenvalues, a pseudo-Levi containing the maximal torus.
SubgroupDescriptor centralizer_subgroup(const MatrixElement& element,
                                        const GroupDescriptor& g);
SubgroupDescriptor centralizer_subgroup(const std::vector<MatrixElement>& torus_generators,
                                        const GroupDescriptor& g);

/// Restriction of a length form to Y(H): the same matrix together with the
/// recorded constraint system, so G-side and H-side length computations of
/// any λ ∈ Y(H) agree by construction.
struct RestrictedForm {
  LengthForm form;
  std::vector<std::vector<Coord>> constraints;
};

RestrictedForm restrict_form(const LengthForm& form, const SubgroupDescriptor& h);

/// Executable content of the optimality-transfer theorem at the torus
/// level: the H-restricted maximum equals the G-maximum and is attained at
/// the same (unique) primitive member of Y(T).
struct TransferReport {
  bool holds = false;
  bool semistable = false;  // torus-semistable presentation: both values 0
  Rat value_g_sq = 0;
  Rat value_h_sq = 0;
  std::optional<TorusCocharacter> lambda_g;
  std::optional<TorusCocharacter> lambda_h;
};

TransferReport check_optimal_transfer(const MatrixElement& e, const SubgroupDescriptor& h,
                                      const LengthForm& form);

/// Executable content of the associated-cocharacter transfer theorem: the
/// blockwise H-associated cocharacter, pushed to ambient coordinates, is
/// G-associated to the matching presentation of e and has the same weight
/// multiset as the G-route associated cocharacter; and this agrees with the
/// optimality transfer (the two sides of the biconditional are asserted
/// equal).
struct AssociatedTransferReport {
  bool holds_a = false;
  bool holds_opt = false;
  TorusCocharacter lambda_h;  // H-route, ambient coordinates (H-blockwise Jordan frame)
  TorusCocharacter lambda_g;  // G-route, ambient Jordan frame
};

AssociatedTransferReport check_associated_transfer(const MatrixElement& e,
                                                   const SubgroupDescriptor& h);

/// (e, λ) ↦ ((e,…,e), (λ,…,λ)) into the r-fold product of λ's group.
std::pair<MatrixElement, TorusCocharacter> diagonal_embed(const MatrixElement& e,
                                                          const TorusCocharacter& lambda,
                                                          int r);

/// Round trip H → C_G(H)⁰ → C_G(C_G(H)⁰)⁰ for a block subgroup: the centre
/// torus of the blocks is grouped back into a Levi, which must recover H.
bool double_centralizer_check(const SubgroupDescriptor& h);

}  // namespace kempf
