#pragma once

#include <map>
#include <vector>

#include "kempf/solver.hpp"

namespace kempf {

/// Elements of G and of Lie(G) are plain rational matrices of size rank(G),
/// block-diagonal across product components.
using MatrixElement = QMat;

/// Throws unless m is rank×rank, block-diagonal across the components of g,
/// and traceless on special-linear blocks.
void validate_lie_element(const MatrixElement& m, const GroupDescriptor& g);

/// Throws unless m is rank×rank, block-diagonal, invertible, and of
/// determinant 1 on special-linear blocks.
void validate_group_element(const MatrixElement& m, const GroupDescriptor& g);

/// T-weight decomposition of a Lie-algebra element under the adjoint
/// action: entry (j,k) with j ≠ k contributes the weight e_j − e_k; a
/// nonzero diagonal contributes the zero weight. Coefficients are the
/// matrix entries (for the zero weight, the first nonzero diagonal entry
/// stands in for the diagonal component; only the support feeds the
/// destabilization machinery).
WeightedPoint adjoint_decompose(const MatrixElement& e, const GroupDescriptor& g);

/// Splits m by λ-degree: entry (j,k) goes to degree w_j − w_k. The pieces
/// sum back to m; e ∈ g(i,λ) means the single key i.
std::map<Coord, MatrixElement> grade(const MatrixElement& m, const TorusCocharacter& lambda);

enum class Membership { InP, InLevi, InRu, NotInP };

/// Entry-pattern membership in P_λ / L_λ / R_u(P_λ) for invertible g:
/// the limit t→0 of λ(t)·g·λ(t)⁻¹ exists iff no entry sits in negative
/// degree; the limit is g itself iff all entries sit in degree 0; the
/// limit is 1 iff additionally the degree-0 part is the identity. Returns
/// the most specific verdict (the identity reports InLevi).
Membership parabolic_membership(const MatrixElement& g, const TorusCocharacter& lambda);

/// Basis of Lie(G): elementary matrices within blocks; for special-linear
/// blocks the diagonal is replaced by traceless differences.
std::vector<MatrixElement> lie_basis(const GroupDescriptor& g);

/// Exact basis of the centralizer {m ∈ Lie(G) : me = em}, computed as the
/// kernel of the commutator map.
std::vector<MatrixElement> centralizer_lie_basis(const MatrixElement& e,
                                                 const GroupDescriptor& g);

}  // namespace kempf
