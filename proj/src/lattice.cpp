#include "kempf/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "kempf/errors.hpp"
#include "kempf/linalg.hpp"

namespace kempf {

void require_dimension(size_t got, size_t want, const char* what) {
  if (got != want)
    throw ValidationError("DimensionMismatch",
                          std::string(what) + ": got length " + std::to_string(got) +
                              ", expected " + std::to_string(want));
}

TorusCocharacter::TorusCocharacter(std::vector<Coord> w, GroupDescriptor g)
    : weights(std::move(w)), group(std::move(g)) {
  require_dimension(weights.size(), static_cast<size_t>(group.rank()),
                    "cocharacter weight vector");
  for (size_t i = 0; i < group.components().size(); ++i) {
    if (!group.components()[i].special) continue;
    auto [b, e] = group.blocks()[i];
    Int sum = 0;
    for (int c = b; c < e; ++c) sum += weights[c];
    if (sum != 0)
      throw ValidationError("NotInLattice",
                            "special-linear block " + std::to_string(i) +
                                " weights must sum to zero");
  }
}

bool TorusCocharacter::is_zero() const {
  return std::all_of(weights.begin(), weights.end(), [](Coord w) { return w == 0; });
}

QVec TorusCocharacter::as_qvec() const {
  QVec v(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) v(i) = Rat(static_cast<long>(weights[i]));
  return v;
}

QVec Weight::as_qvec() const {
  QVec v(covector.size());
  for (size_t i = 0; i < covector.size(); ++i) v(i) = Rat(static_cast<long>(covector[i]));
  return v;
}

bool is_symmetric(const QMat& m) {
  if (m.rows() != m.cols()) return false;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

bool is_positive_definite(const QMat& m) {
  // Sylvester's criterion, exact: all leading principal minors positive.
  for (long k = 1; k <= m.rows(); ++k) {
    if (determinant(m.topLeftCorner(k, k)) <= 0) return false;
  }
  return true;
}

bool has_integer_entries(const QMat& m) {
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

namespace {

// Generators of the blockwise permutation action: for each component block,
// the adjacent transpositions inside it.
std::vector<std::pair<int, int>> weyl_generators(const GroupDescriptor& g) {
  std::vector<std::pair<int, int>> gens;
  for (auto [b, e] : g.blocks())
    for (int c = b; c + 1 < e; ++c) gens.emplace_back(c, c + 1);
  return gens;
}

QMat apply_transposition(const QMat& m, int a, int b) {
  QMat r = m;
  r.row(a).swap(r.row(b));
  r.col(a).swap(r.col(b));
  return r;
}

}  // namespace

LengthForm::LengthForm(QMat m, GroupDescriptor g)
    : matrix(std::move(m)), group(std::move(g)) {
  if (matrix.rows() != group.rank() || matrix.cols() != group.rank())
    throw ValidationError("DimensionMismatch", "form size must equal the torus rank");
  if (!has_integer_entries(matrix))
    throw ValidationError("NotIntegerForm", "length form entries must be integers");
  if (!is_symmetric(matrix))
    throw ValidationError("NotSymmetric", "length form must be symmetric");
  if (!is_positive_definite(matrix))
    throw ValidationError("NotPositiveDefinite", "length form must be positive definite");
  for (auto [a, b] : weyl_generators(group)) {
    if (apply_transposition(matrix, a, b) != matrix)
      throw ValidationError("NotWeylInvariant",
                            "length form is not invariant under the Weyl group of " +
                                group.tag());
  }
}

LengthForm LengthForm::identity(const GroupDescriptor& g) {
  return LengthForm(QMat::Identity(g.rank(), g.rank()), g);
}

std::pair<TorusCocharacter, Int> primitive_part(const TorusCocharacter& lambda) {
  if (lambda.is_zero())
    throw ValidationError("ZeroCocharacter", "the zero cocharacter has no primitive part");
  Int g = 0;
  for (Coord w : lambda.weights) g = int_gcd(g, Int(static_cast<long>(w)));
  auto d = to_coord(g);
  if (!d) throw InternalError("cocharacter content overflows the coordinate type");
  std::vector<Coord> prim(lambda.weights.size());
  for (size_t i = 0; i < prim.size(); ++i) prim[i] = lambda.weights[i] / *d;
  return {TorusCocharacter(std::move(prim), lambda.group), g};
}

Int pairing(const Weight& chi, const TorusCocharacter& lambda) {
  require_dimension(chi.covector.size(), lambda.weights.size(), "pairing covector");
  Int acc = 0;
  for (size_t i = 0; i < chi.covector.size(); ++i)
    acc += Int(static_cast<long>(chi.covector[i])) * Int(static_cast<long>(lambda.weights[i]));
  return acc;
}

Rat squared_length(const LengthForm& form, const TorusCocharacter& lambda) {
  if (lambda.is_zero())
    throw ValidationError("ZeroCocharacter", "squared length of the zero cocharacter");
  require_dimension(lambda.weights.size(), static_cast<size_t>(form.rank()),
                    "cocharacter for squared_length");
  QVec v = lambda.as_qvec();
  return (v.transpose() * form.matrix * v)(0, 0);
}

LengthForm weyl_invariant_form(const QMat& seed, const GroupDescriptor& group) {
  if (seed.rows() != group.rank() || seed.cols() != group.rank())
    throw ValidationError("DimensionMismatch", "seed size must equal the torus rank");
  if (!has_integer_entries(seed))
    throw ValidationError("NotIntegerForm", "seed entries must be integers");
  if (!is_symmetric(seed))
    throw ValidationError("NotSymmetric", "seed must be symmetric");
  if (!is_positive_definite(seed))
    throw ValidationError("NotPositiveDefinite", "seed must be positive definite");

  // The full Weyl sum factors through blockwise symmetrization: summing over
  // one block's symmetric group, then the next, equals summing over the
  // product. This keeps the work at Σ|S_block| instead of Π|S_block|.
  const int n = group.rank();
  QMat acc = seed;
  for (auto [b, e] : group.blocks()) {
    std::vector<int> perm(e - b);
    std::iota(perm.begin(), perm.end(), b);
    QMat next = QMat::Zero(n, n);
    std::sort(perm.begin(), perm.end());
    do {
      // Permutation matrix P with P(perm[k], b+k) = 1 off the block being
      // the identity: conjugate acc by it and accumulate.
      QMat p = QMat::Identity(n, n);
      for (int k = 0; k < e - b; ++k) {
        p(b + k, b + k) = 0;
        p(perm[k], b + k) = 1;
      }
      next += p.transpose() * acc * p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc = next;
  }
  return LengthForm(acc, group);
}

std::strong_ordering compare_ratios(const Int& alpha1, const Rat& q1,
                                    const Int& alpha2, const Rat& q2) {
  if (alpha1 < 0 || alpha2 < 0)
    throw ValidationError("NegativeAlpha", "compare_ratios needs nonnegative alphas");
  if (q1 <= 0 || q2 <= 0)
    throw ValidationError("NotPositive", "compare_ratios needs positive squared lengths");
  Rat lhs = Rat(alpha1 * alpha1) * q2;
  Rat rhs = Rat(alpha2 * alpha2) * q1;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace kempf
