#include "kempf/linalg.hpp"

#include <Eigen/LU>

#include "kempf/errors.hpp"

namespace kempf {

long rank_of(const QMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::FullPivLU<QMat> lu(m);
  return lu.rank();
}

QMat kernel_basis(const QMat& m) {
  if (m.cols() == 0) return QMat(0, 0);
  if (m.rows() == 0) return QMat::Identity(m.cols(), m.cols());
  Eigen::FullPivLU<QMat> lu(m);
  if (lu.dimensionOfKernel() == 0) return QMat(m.cols(), 0);
  return lu.kernel();
}

QMat inverse(const QMat& m) {
  if (m.rows() != m.cols())
    throw ValidationError("NotInvertible", "matrix is not square");
  Eigen::FullPivLU<QMat> lu(m);
  if (!lu.isInvertible())
    throw ValidationError("NotInvertible", "matrix is singular");
  return lu.inverse();
}

Rat determinant(const QMat& m) {
  if (m.rows() != m.cols())
    throw ValidationError("NotInvertible", "determinant of a non-square matrix");
  if (m.rows() == 0) return Rat(1);
  Eigen::FullPivLU<QMat> lu(m);
  return lu.determinant();
}

QVec solve_square(const QMat& a, const QVec& b) {
  Eigen::FullPivLU<QMat> lu(a);
  if (!lu.isInvertible())
    throw InternalError("solve_square called on a singular system");
  return lu.solve(b);
}

bool is_zero(const QMat& m) {
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

bool is_zero(const QVec& v) {
  for (long i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

bool IncrementalSpan::add(QVec v) {
  if (v.size() != dim_) throw InternalError("IncrementalSpan dimension mismatch");
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Rat& c = v(pivots_[r]);
    if (c != 0) v -= c * rows_[r];
  }
  for (long j = 0; j < dim_; ++j) {
    if (v(j) != 0) {
      v /= v(j);
      rows_.push_back(v);
      pivots_.push_back(j);
      return true;
    }
  }
  return false;
}

bool IncrementalSpan::contains(QVec v) const {
  if (v.size() != dim_) throw InternalError("IncrementalSpan dimension mismatch");
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Rat& c = v(pivots_[r]);
    if (c != 0) v -= c * rows_[r];
  }
  return is_zero(v);
}

}  // namespace kempf
