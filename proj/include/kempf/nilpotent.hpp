#pragma once

#include <optional>

#include "kempf/groups.hpp"

namespace kempf {

/// Jordan type of a nilpotent matrix: weakly decreasing part sizes together
/// with the coordinates carrying each block.
struct Partition {
  std::vector<int> parts;
  std::vector<std::vector<int>> block_coordinates;

  int total() const;
  void validate() const;
};

/// All partitions of n as weakly decreasing part lists, in deterministic
/// (reverse-lexicographic) order. partitions_of(0) = { [] }.
std::vector<std::vector<int>> partitions_of(int n);

/// The Jordan matrix of a partition: an upper shift on each block's
/// coordinates, in chain order.
MatrixElement jordan_matrix(const Partition& p);

struct JordanData {
  Partition partition;
  MatrixElement base_change;  // g with g·e·g⁻¹ = jordan_matrix(partition)
};

/// Jordan type of e via the rank sequence (multiplicity of part k is
/// rank e^{k−1} − 2·rank e^k + rank e^{k+1}) plus an exact conjugator built
/// from Jordan chains. The conjugation identity is re-verified before
/// returning. Blocks come out in weakly decreasing size with consecutive
/// coordinates.
JordanData jordan_partition(const MatrixElement& e);

/// If e has at most one nonzero entry per row and per column, with no
/// diagonal entries and no cycles, it is a scaled union of coordinate
/// chains: each chain is a Jordan block supported on named coordinates.
/// Returns the resulting partition (blocks sorted by decreasing size, then
/// by first coordinate), with each chain listed from its kernel end. Empty
/// when e is not of this shape.
std::optional<Partition> coordinate_chains(const MatrixElement& e);

struct AssociatedData {
  TorusCocharacter lambda_a;
  std::vector<std::vector<int>> levi_blocks;
  MatrixElement base_change;
  bool check_degree_two = false;
  bool check_distinguished = false;
  bool check_derived_image = false;

  /// Weights rearranged into weakly decreasing order, for comparison with
  /// weighted-Dynkin-diagram conventions.
  std::vector<Coord> dominant_view() const;
};

/// The cocharacter associated with the nilpotent of Jordan type p, in p's
/// coordinates: the block of size d carries the weight string
/// (d−1, d−3, …, 1−d), so the Jordan shift sits in degree 2. The Levi
/// blocks come from the maximal torus of the centralizer (one scalar
/// parameter per Jordan block), and the three defining conditions are
/// verified and recorded.
AssociatedData associated_cocharacter(const Partition& p);

/// True iff every torus of the centralizer of e inside the block Levi L
/// lies in the centre of L: the maximal-torus dimension of C_L(e) (the
/// number of Jordan blocks of e summed over the L-blocks) equals the
/// number of L-blocks. For a block Levi this says e is regular in each
/// block.
bool is_distinguished(const MatrixElement& e,
                      const std::vector<std::vector<int>>& levi_blocks);

/// Coordinate blocks of C_G(S) for a torus S given by diagonal generators:
/// the classes of coordinates carrying identical eigenvalue tuples. With no
/// generators the result is the single block {0..n−1}.
std::vector<std::vector<int>> levi_of_torus(const std::vector<MatrixElement>& generators,
                                            int n);

struct CentralizerDecomposition {
  std::map<Coord, long> dims_by_grade;  // nonzero graded dimensions only
  long dim_re = 0;                      // total dimension in degrees > 0
  long dim_c_e_lambda = 0;              // dimension in degree 0
  long negative_part_dim = 0;           // total dimension in degrees < 0
};

/// λ-graded dimensions of the centralizer of e in gl_n, computed per degree
/// as the exact kernel of the commutator map restricted to that graded
/// piece.
CentralizerDecomposition centralizer_decomposition(const MatrixElement& e,
                                                   const TorusCocharacter& lambda);

/// dim C_{gl_n}(e) from the Jordan type: Σ (dᵢ')² over the conjugate
/// partition, the independent dimension oracle.
long centralizer_dimension_formula(const std::vector<int>& parts);

struct VerifyAssociated {
  bool degree_two = false;
  bool distinguished = false;
  bool derived_image = false;
  bool all() const { return degree_two && distinguished && derived_image; }
};

/// Checks the three defining conditions of an associated cocharacter for a
/// chain-aligned nilpotent e in the group g: e ∈ g(2,λ) via the grading;
/// distinguishedness of e in L = C_G(S) for S the diagonal maximal torus of
/// C_G(e) read off the coordinate chains; and blockwise zero weight sums
/// (Im(λ) ⊆ DL). Requires e to be a scaled union of coordinate chains so
/// that S is diagonal; other presentations must be conjugated first.
VerifyAssociated verify_associated(const MatrixElement& e, const TorusCocharacter& lambda,
                                   const GroupDescriptor& g);

/// Componentwise Jordan + associated-cocharacter data for a nilpotent
/// element of a product group, assembled in ambient coordinates.
struct GroupAssociatedData {
  TorusCocharacter lambda_a;                  // tagged by the group, Jordan coordinates
  std::vector<std::vector<int>> levi_blocks;  // ambient coordinates
  MatrixElement base_change;                  // g·e·g⁻¹ = jordan_e, block-diagonal
  MatrixElement jordan_e;
  std::vector<Partition> component_partitions;
};

GroupAssociatedData associated_data_for(const MatrixElement& e, const GroupDescriptor& g);

struct OptimalRayCheck {
  TorusCocharacter lambda_a;           // associated, in Jordan coordinates
  TorusCocharacter primitive_optimal;  // solver output on the Jordan form
  Int scaling_d;                       // lambda_a = d · primitive_optimal, d ∈ {1,2}
  OptimalClassReport report;
};

/// The executable form of "associated cocharacters are optimal": conjugates
/// e to Jordan form, runs the destabilization solver there, and checks that
/// the associated cocharacter lies on the optimal ray with scaling 1 or 2
/// (2 exactly when every part is odd, i.e. every weight entry is even) and
/// achieves the same α/∥λ∥ ratio. Throws InternalError on any mismatch.
OptimalRayCheck optimal_ray_check(const MatrixElement& e, const LengthForm& form,
                                  const GroupDescriptor& g);

}  // namespace kempf
