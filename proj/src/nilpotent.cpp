#include "kempf/nilpotent.hpp"

#include <algorithm>
#include <numeric>

#include "kempf/errors.hpp"
#include "kempf/linalg.hpp"

namespace kempf {

namespace {

bool is_zero_matrix(const QMat& m) { return is_zero(m); }

// Smallest k with e^k = 0, or nullopt if e is not nilpotent. Also hands the
// powers e^0..e^k to the caller.
std::optional<int> nilpotency_index(const QMat& e, std::vector<QMat>& powers) {
  const long n = e.rows();
  powers.clear();
  powers.push_back(QMat::Identity(n, n));
  for (int k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * e);
    if (is_zero_matrix(powers.back())) return k;
  }
  return std::nullopt;
}

void require_square(const QMat& e, const char* what) {
  if (e.rows() != e.cols() || e.rows() == 0)
    throw ValidationError("ShapeMismatch", std::string(what) + " needs a nonempty square matrix");
}

std::vector<QVec> matrix_columns(const QMat& m) {
  std::vector<QVec> cols;
  for (long c = 0; c < m.cols(); ++c) cols.push_back(m.col(c));
  return cols;
}

}  // namespace

int Partition::total() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

void Partition::validate() const {
  if (parts.empty())
    throw ValidationError("BadPartition", "partition needs at least one part");
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1)
      throw ValidationError("BadPartition", "parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw ValidationError("BadPartition", "parts must be weakly decreasing");
  }
  if (block_coordinates.size() != parts.size())
    throw ValidationError("BadPartition", "one coordinate block per part required");
  std::vector<int> seen;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (static_cast<int>(block_coordinates[i].size()) != parts[i])
      throw ValidationError("BadPartition", "block size must equal its part");
    for (int c : block_coordinates[i]) seen.push_back(c);
  }
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < total(); ++i)
    if (i >= static_cast<int>(seen.size()) || seen[i] != i)
      throw ValidationError("BadPartition", "blocks must partition the coordinate range");
}

std::vector<std::vector<int>> partitions_of(int n) {
  if (n < 0) throw ValidationError("BadPartition", "cannot partition a negative integer");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  // Reverse-lexicographic: largest first part first.
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int p = std::min(cap, remaining); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

MatrixElement jordan_matrix(const Partition& p) {
  p.validate();
  const int n = p.total();
  QMat j = QMat::Zero(n, n);
  for (const auto& block : p.block_coordinates)
    for (size_t i = 0; i + 1 < block.size(); ++i) j(block[i], block[i + 1]) = 1;
  return j;
}

JordanData jordan_partition(const MatrixElement& e) {
  require_square(e, "jordan_partition");
  const long n = e.rows();
  std::vector<QMat> powers;
  auto index = nilpotency_index(e, powers);
  if (!index)
    throw ValidationError("NotNilpotent", "matrix is not nilpotent");
  const int big_n = *index;

  // Rank sequence route to the multiplicities.
  std::vector<long> ranks(big_n + 2, 0);
  for (int k = 0; k <= big_n; ++k) ranks[k] = rank_of(powers[k]);
  std::vector<int> multiplicity(big_n + 1, 0);
  for (int k = 1; k <= big_n; ++k)
    multiplicity[k] =
        static_cast<int>(ranks[k - 1] - 2 * ranks[k] + (k + 1 <= big_n ? ranks[k + 1] : 0));

  // Chain construction route: at height h, new chain tops complete
  // ker e^{h-1} plus the height-h elements of taller chains to ker e^h.
  std::vector<std::vector<QVec>> chains;  // each chain: top first
  std::vector<QMat> kernels(big_n + 1);
  for (int k = 1; k <= big_n; ++k) kernels[k] = kernel_basis(powers[k]);

  for (int h = big_n; h >= 1; --h) {
    IncrementalSpan span(n);
    if (h >= 2)
      for (const auto& col : matrix_columns(kernels[h - 1])) span.add(col);
    for (const auto& chain : chains) {
      const int height = static_cast<int>(chain.size());
      if (height > h) span.add(chain[height - h]);
    }
    int added = 0;
    for (const auto& col : matrix_columns(kernels[h])) {
      if (!span.add(col)) continue;
      std::vector<QVec> chain;
      chain.push_back(col);
      for (int step = 1; step < h; ++step) chain.push_back(e * chain.back());
      chains.push_back(std::move(chain));
      ++added;
    }
    if (added != multiplicity[h])
      throw InternalError("Jordan chain count disagrees with the rank sequence");
  }

  std::stable_sort(chains.begin(), chains.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  // Columns from the kernel end up: e maps each column to the previous one.
  QMat p_mat(n, n);
  Partition partition;
  int at = 0;
  for (const auto& chain : chains) {
    const int h = static_cast<int>(chain.size());
    partition.parts.push_back(h);
    std::vector<int> coords(h);
    std::iota(coords.begin(), coords.end(), at);
    partition.block_coordinates.push_back(coords);
    for (int i = 0; i < h; ++i) p_mat.col(at + i) = chain[h - 1 - i];
    at += h;
  }
  partition.validate();

  QMat g;
  try {
    g = inverse(p_mat);
  } catch (const ValidationError&) {
    throw InternalError("Jordan chain vectors failed to form a basis");
  }
  JordanData out{std::move(partition), g};
  if (QMat(g * e * p_mat) != jordan_matrix(out.partition))
    throw InternalError("Jordan conjugation identity failed verification");
  return out;
}

std::optional<Partition> coordinate_chains(const MatrixElement& e) {
  require_square(e, "coordinate_chains");
  const int n = static_cast<int>(e.rows());
  std::vector<int> next(n, -1), prev(n, -1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (e(j, k) == 0) continue;
      if (j == k) return std::nullopt;              // diagonal entry
      if (next[k] != -1 || prev[j] != -1) return std::nullopt;  // row/col collision
      next[k] = j;  // e sends basis vector k into coordinate j
      prev[j] = k;
    }
  std::vector<std::vector<int>> chains;
  std::vector<bool> visited(n, false);
  for (int top = 0; top < n; ++top) {
    if (prev[top] != -1) continue;  // not a chain top
    std::vector<int> path;
    for (int c = top; c != -1; c = next[c]) {
      path.push_back(c);
      visited[c] = true;
    }
    std::reverse(path.begin(), path.end());  // kernel end first
    chains.push_back(std::move(path));
  }
  for (int c = 0; c < n; ++c)
    if (!visited[c]) return std::nullopt;  // cycle: not nilpotent
  std::sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  Partition p;
  for (auto& chain : chains) {
    p.parts.push_back(static_cast<int>(chain.size()));
    p.block_coordinates.push_back(std::move(chain));
  }
  p.validate();
  return p;
}

std::vector<Coord> AssociatedData::dominant_view() const {
  std::vector<Coord> sorted = lambda_a.weights;
  std::sort(sorted.begin(), sorted.end(), std::greater<Coord>());
  return sorted;
}

AssociatedData associated_cocharacter(const Partition& p) {
  p.validate();
  const int n = p.total();
  std::vector<Coord> weights(n, 0);
  for (size_t b = 0; b < p.parts.size(); ++b) {
    const int d = p.parts[b];
    for (int i = 0; i < d; ++i) weights[p.block_coordinates[b][i]] = d - 1 - 2 * i;
  }
  AssociatedData out{TorusCocharacter(weights, GroupDescriptor::general_linear(n)),
                     p.block_coordinates,
                     QMat::Identity(n, n),
                     false,
                     false,
                     false};
  QMat j = jordan_matrix(p);
  auto graded = grade(j, out.lambda_a);
  out.check_degree_two = true;
  for (const auto& piece : graded)
    if (piece.first != 2) out.check_degree_two = false;
  out.check_distinguished = is_distinguished(j, out.levi_blocks);
  out.check_derived_image = true;
  for (const auto& block : out.levi_blocks) {
    Int sum = 0;
    for (int c : block) sum += weights[c];
    if (sum != 0) out.check_derived_image = false;
  }
  return out;
}

bool is_distinguished(const MatrixElement& e,
                      const std::vector<std::vector<int>>& levi_blocks) {
  require_square(e, "is_distinguished");
  const int n = static_cast<int>(e.rows());
  std::vector<int> owner(n, -1);
  for (size_t b = 0; b < levi_blocks.size(); ++b)
    for (int c : levi_blocks[b]) {
      if (c < 0 || c >= n || owner[c] != -1)
        throw ValidationError("NotInLevi", "Levi blocks must partition the coordinates");
      owner[c] = static_cast<int>(b);
    }
  for (int c = 0; c < n; ++c)
    if (owner[c] == -1)
      throw ValidationError("NotInLevi", "Levi blocks must cover every coordinate");
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (e(j, k) != 0 && owner[j] != owner[k])
        throw ValidationError("NotInLevi", "element has an entry outside the Levi");

  // Maximal-torus dimension of the centralizer inside L: one dimension per
  // Jordan block of each block restriction. Centre of L: one per block.
  long torus_dim = 0;
  for (const auto& block : levi_blocks) {
    const int s = static_cast<int>(block.size());
    QMat sub(s, s);
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) sub(a, b) = e(block[a], block[b]);
    std::vector<QMat> powers;
    if (!nilpotency_index(sub, powers) && !is_zero_matrix(sub))
      throw ValidationError("NotNilpotent", "block restriction is not nilpotent");
    torus_dim += s - rank_of(sub);  // number of Jordan blocks of the restriction
  }
  return torus_dim == static_cast<long>(levi_blocks.size());
}

std::vector<std::vector<int>> levi_of_torus(const std::vector<MatrixElement>& generators,
                                            int n) {
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw ValidationError("ShapeMismatch", "torus generator has the wrong size");
    for (long j = 0; j < g.rows(); ++j)
      for (long k = 0; k < g.cols(); ++k)
        if (j != k && g(j, k) != 0)
          throw ValidationError("NotDiagonal", "torus generators must be diagonal");
  }
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<Rat>> tuples;
  for (int c = 0; c < n; ++c) {
    std::vector<Rat> tuple;
    for (const auto& g : generators) tuple.push_back(g(c, c));
    bool placed = false;
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (tuples[b] == tuple) {
        blocks[b].push_back(c);
        placed = true;
        break;
      }
    }
    if (!placed) {
      blocks.push_back({c});
      tuples.push_back(std::move(tuple));
    }
  }
  return blocks;
}

CentralizerDecomposition centralizer_decomposition(const MatrixElement& e,
                                                   const TorusCocharacter& lambda) {
  require_square(e, "centralizer_decomposition");
  const int n = static_cast<int>(e.rows());
  if (static_cast<int>(lambda.weights.size()) != n)
    throw ValidationError("ShapeMismatch", "cocharacter size must match the matrix");
  std::vector<QMat> powers;
  if (!nilpotency_index(e, powers) && !is_zero_matrix(e))
    throw ValidationError("NotNilpotent", "centralizer_decomposition expects a nilpotent");

  // Group the elementary matrices by λ-degree, then take the kernel of the
  // commutator map on each graded piece.
  std::map<Coord, std::vector<std::pair<int, int>>> cells_by_degree;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      cells_by_degree[lambda.weights[j] - lambda.weights[k]].emplace_back(j, k);

  CentralizerDecomposition out;
  for (const auto& [deg, cells] : cells_by_degree) {
    QMat commutators(n * n, cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      auto [j, k] = cells[i];
      QMat basis_elt = QMat::Zero(n, n);
      basis_elt(j, k) = 1;
      QMat c = basis_elt * e - e * basis_elt;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) commutators(r * n + s, i) = c(r, s);
    }
    long dim = static_cast<long>(cells.size()) - rank_of(commutators);
    if (dim == 0) continue;
    out.dims_by_grade[deg] = dim;
    if (deg > 0) out.dim_re += dim;
    if (deg == 0) out.dim_c_e_lambda += dim;
    if (deg < 0) out.negative_part_dim += dim;
  }
  return out;
}

long centralizer_dimension_formula(const std::vector<int>& parts) {
  if (parts.empty()) return 0;
  const int max_part = *std::max_element(parts.begin(), parts.end());
  long total = 0;
  for (int i = 1; i <= max_part; ++i) {
    long conj = 0;
    for (int p : parts)
      if (p >= i) ++conj;
    total += conj * conj;
  }
  return total;
}

VerifyAssociated verify_associated(const MatrixElement& e, const TorusCocharacter& lambda,
                                   const GroupDescriptor& g) {
  validate_lie_element(e, g);
  if (static_cast<int>(lambda.weights.size()) != g.rank())
    throw ValidationError("ShapeMismatch", "cocharacter size must match the group rank");
  std::vector<QMat> powers;
  if (!nilpotency_index(e, powers) && !is_zero_matrix(e))
    throw ValidationError("NotNilpotent", "verify_associated expects a nilpotent element");

  auto chains = coordinate_chains(e);
  if (!chains)
    throw ValidationError("NotChainAligned",
                          "the element must be a scaled union of coordinate chains "
                          "(conjugate to Jordan-aligned coordinates first)");

  VerifyAssociated out;
  auto graded = grade(e, lambda);
  out.degree_two = true;
  for (const auto& piece : graded)
    if (piece.first != 2) out.degree_two = false;

  // S = maximal torus of C_G(e): one scalar parameter per chain. Its
  // centralizer Levi is computed by eigenvalue grouping of the generators.
  std::vector<MatrixElement> gens;
  for (const auto& block : chains->block_coordinates) {
    QMat gen = QMat::Zero(g.rank(), g.rank());
    for (int c : block) gen(c, c) = 1;
    gens.push_back(std::move(gen));
  }
  auto levi = levi_of_torus(gens, g.rank());
  out.distinguished = is_distinguished(e, levi);
  out.derived_image = true;
  for (const auto& block : levi) {
    Int sum = 0;
    for (int c : block) sum += lambda.weights[c];
    if (sum != 0) out.derived_image = false;
  }
  return out;
}

GroupAssociatedData associated_data_for(const MatrixElement& e, const GroupDescriptor& g) {
  validate_lie_element(e, g);
  const int n = g.rank();
  std::vector<Coord> weights(n, 0);
  GroupAssociatedData out{TorusCocharacter(std::vector<Coord>(n, 0), g),
                          {},
                          QMat::Identity(n, n),
                          QMat::Zero(n, n),
                          {}};
  for (auto [b, end] : g.blocks()) {
    const int s = end - b;
    QMat sub(s, s);
    for (int a = 0; a < s; ++a)
      for (int c = 0; c < s; ++c) sub(a, c) = e(b + a, b + c);
    JordanData jd = jordan_partition(sub);
    AssociatedData ad = associated_cocharacter(jd.partition);
    for (int i = 0; i < s; ++i) weights[b + i] = ad.lambda_a.weights[i];
    for (const auto& block : jd.partition.block_coordinates) {
      std::vector<int> ambient;
      for (int c : block) ambient.push_back(b + c);
      out.levi_blocks.push_back(ambient);
    }
    QMat j = jordan_matrix(jd.partition);
    for (int a = 0; a < s; ++a)
      for (int c = 0; c < s; ++c) {
        out.base_change(b + a, b + c) = jd.base_change(a, c);
        out.jordan_e(b + a, b + c) = j(a, c);
      }
    Partition ambient_partition = jd.partition;
    for (auto& block : ambient_partition.block_coordinates)
      for (int& c : block) c += b;
    out.component_partitions.push_back(std::move(ambient_partition));
  }
  out.lambda_a = TorusCocharacter(weights, g);
  return out;
}

OptimalRayCheck optimal_ray_check(const MatrixElement& e, const LengthForm& form,
                                  const GroupDescriptor& g) {
  if (is_zero_matrix(e))
    throw ValidationError("ZeroPoint", "optimal ray of the zero element is undefined");
  GroupAssociatedData gad = associated_data_for(e, g);

  WeightedPoint x = adjoint_decompose(gad.jordan_e, g);
  TorusOptimalResult res = torus_optimal(x, form);
  if (!std::holds_alternative<OptimalClassReport>(res))
    throw InternalError("nonzero nilpotent reported semistable");
  OptimalClassReport report = std::get<OptimalClassReport>(res);

  auto [prim, d] = primitive_part(gad.lambda_a);
  bool all_even = true;
  for (Coord w : gad.lambda_a.weights)
    if (w % 2 != 0) all_even = false;
  if (d != (all_even ? 2 : 1))
    throw InternalError("associated cocharacter content is not the expected 1 or 2");
  if (prim.weights != report.primitive_optimal.weights)
    throw InternalError("associated cocharacter is not on the optimal ray");
  auto cmp = compare_ratios(alpha(x, gad.lambda_a), squared_length(form, gad.lambda_a),
                            report.alpha_at_primitive,
                            squared_length(form, report.primitive_optimal));
  if (cmp != std::strong_ordering::equal)
    throw InternalError("associated and optimal cocharacters achieve different ratios");

  return OptimalRayCheck{gad.lambda_a, report.primitive_optimal, d, std::move(report)};
}

}  // namespace kempf
