#include "kempf/groups.hpp"

#include <Eigen/LU>

#include "kempf/errors.hpp"
#include "kempf/linalg.hpp"

namespace kempf {

namespace {

void require_shape(const MatrixElement& m, const GroupDescriptor& g) {
  if (m.rows() != g.rank() || m.cols() != g.rank())
    throw ValidationError("ShapeMismatch",
                          "matrix must be " + std::to_string(g.rank()) + "x" +
                              std::to_string(g.rank()) + " for group " + g.tag());
}

void require_block_diagonal(const MatrixElement& m, const GroupDescriptor& g) {
  for (long j = 0; j < m.rows(); ++j)
    for (long k = 0; k < m.cols(); ++k) {
      if (m(j, k) != 0 && g.component_of(j) != g.component_of(k))
        throw ValidationError("ShapeMismatch",
                              "entry (" + std::to_string(j) + "," + std::to_string(k) +
                                  ") crosses component blocks of " + g.tag());
    }
}

}  // namespace

void validate_lie_element(const MatrixElement& m, const GroupDescriptor& g) {
  require_shape(m, g);
  require_block_diagonal(m, g);
  for (size_t i = 0; i < g.components().size(); ++i) {
    if (!g.components()[i].special) continue;
    auto [b, e] = g.blocks()[i];
    Rat tr(0);
    for (int c = b; c < e; ++c) tr += m(c, c);
    if (tr != 0)
      throw ValidationError("ShapeMismatch",
                            "special-linear block " + std::to_string(i) +
                                " must be traceless");
  }
}

void validate_group_element(const MatrixElement& m, const GroupDescriptor& g) {
  require_shape(m, g);
  require_block_diagonal(m, g);
  for (size_t i = 0; i < g.components().size(); ++i) {
    auto [b, e] = g.blocks()[i];
    Rat det = determinant(QMat(m.block(b, b, e - b, e - b)));
    if (det == 0)
      throw ValidationError("NotInvertible",
                            "component block " + std::to_string(i) + " is singular");
    if (g.components()[i].special && det != 1)
      throw ValidationError("NotInGroup",
                            "special-linear block " + std::to_string(i) +
                                " must have determinant 1");
  }
}

WeightedPoint adjoint_decompose(const MatrixElement& e, const GroupDescriptor& g) {
  validate_lie_element(e, g);
  const int n = g.rank();
  std::vector<std::pair<Weight, Rat>> entries;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k || e(j, k) == 0) continue;
      std::vector<Coord> cov(n, 0);
      cov[j] = 1;
      cov[k] = -1;
      entries.emplace_back(Weight(std::move(cov)), e(j, k));
    }
  for (int j = 0; j < n; ++j) {
    if (e(j, j) != 0) {
      entries.emplace_back(Weight(std::vector<Coord>(n, 0)), e(j, j));
      break;
    }
  }
  return WeightedPoint(std::move(entries), g);
}

std::map<Coord, MatrixElement> grade(const MatrixElement& m, const TorusCocharacter& lambda) {
  if (m.rows() != m.cols() ||
      m.rows() != static_cast<long>(lambda.weights.size()))
    throw ValidationError("ShapeMismatch", "matrix and cocharacter sizes differ");
  std::map<Coord, MatrixElement> out;
  for (long j = 0; j < m.rows(); ++j)
    for (long k = 0; k < m.cols(); ++k) {
      if (m(j, k) == 0) continue;
      Coord deg = lambda.weights[j] - lambda.weights[k];
      auto it = out.find(deg);
      if (it == out.end())
        it = out.emplace(deg, MatrixElement(QMat::Zero(m.rows(), m.cols()))).first;
      it->second(j, k) = m(j, k);
    }
  return out;
}

Membership parabolic_membership(const MatrixElement& g, const TorusCocharacter& lambda) {
  if (g.rows() != g.cols() ||
      g.rows() != static_cast<long>(lambda.weights.size()))
    throw ValidationError("ShapeMismatch", "matrix and cocharacter sizes differ");
  Eigen::FullPivLU<QMat> lu(g);
  if (!lu.isInvertible())
    throw ValidationError("NotInvertible", "parabolic membership needs an invertible element");

  bool negative_degree = false;
  bool positive_degree = false;
  bool degree_zero_is_identity = true;
  for (long j = 0; j < g.rows(); ++j)
    for (long k = 0; k < g.cols(); ++k) {
      Coord deg = lambda.weights[j] - lambda.weights[k];
      if (deg < 0 && g(j, k) != 0) negative_degree = true;
      if (deg > 0 && g(j, k) != 0) positive_degree = true;
      if (deg == 0 && g(j, k) != Rat(j == k ? 1 : 0)) degree_zero_is_identity = false;
    }
  if (negative_degree) return Membership::NotInP;
  if (!positive_degree) return Membership::InLevi;
  if (degree_zero_is_identity) return Membership::InRu;
  return Membership::InP;
}

std::vector<MatrixElement> lie_basis(const GroupDescriptor& g) {
  const int n = g.rank();
  std::vector<MatrixElement> basis;
  for (size_t i = 0; i < g.components().size(); ++i) {
    auto [b, e] = g.blocks()[i];
    for (int j = b; j < e; ++j)
      for (int k = b; k < e; ++k) {
        if (j == k) continue;
        QMat m = QMat::Zero(n, n);
        m(j, k) = 1;
        basis.push_back(std::move(m));
      }
    if (g.components()[i].special) {
      for (int j = b; j < e - 1; ++j) {
        QMat m = QMat::Zero(n, n);
        m(j, j) = 1;
        m(e - 1, e - 1) = -1;
        basis.push_back(std::move(m));
      }
    } else {
      for (int j = b; j < e; ++j) {
        QMat m = QMat::Zero(n, n);
        m(j, j) = 1;
        basis.push_back(std::move(m));
      }
    }
  }
  return basis;
}

std::vector<MatrixElement> centralizer_lie_basis(const MatrixElement& e,
                                                 const GroupDescriptor& g) {
  validate_lie_element(e, g);
  std::vector<MatrixElement> basis = lie_basis(g);
  const int n = g.rank();
  QMat commutators(n * n, basis.size());
  for (size_t i = 0; i < basis.size(); ++i) {
    QMat c = basis[i] * e - e * basis[i];
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) commutators(r * n + s, i) = c(r, s);
  }
  QMat kernel = kernel_basis(commutators);
  std::vector<MatrixElement> out;
  for (long col = 0; col < kernel.cols(); ++col) {
    QMat m = QMat::Zero(n, n);
    for (size_t i = 0; i < basis.size(); ++i)
      if (kernel(i, col) != 0) m += kernel(i, col) * basis[i];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace kempf
