#pragma once

#include <vector>

#include "kempf/numeric.hpp"

namespace kempf {

/// Exact rank via full-pivot LU (no thresholds: pivoting over Q is exact).
long rank_of(const QMat& m);

/// Basis of the right kernel, one column per basis vector (0 columns if
/// the map is injective).
QMat kernel_basis(const QMat& m);

/// Exact inverse; throws ValidationError("NotInvertible", ...) if singular.
QMat inverse(const QMat& m);

/// Exact determinant.
Rat determinant(const QMat& m);

/// Unique solution of a nonsingular square system A x = b; throws
/// InternalError if A is singular (callers use it on systems that are
/// nonsingular by construction).
QVec solve_square(const QMat& a, const QVec& b);

bool is_zero(const QMat& m);
bool is_zero(const QVec& v);

/// Incremental exact span tracker: add() reduces the vector against the
/// recorded pivots and keeps it only when independent.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(long dim) : dim_(dim) {}

  /// Returns true (and records the vector) iff v is independent of the span.
  bool add(QVec v);

  bool contains(QVec v) const;
  long size() const { return static_cast<long>(rows_.size()); }

 private:
  long dim_;
  std::vector<QVec> rows_;    // reduced, each with a leading pivot
  std::vector<long> pivots_;  // pivot position of rows_[i]
};

}  // namespace kempf
