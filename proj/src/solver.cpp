#include "kempf/solver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <type_traits>

#include "kempf/errors.hpp"
#include "kempf/linalg.hpp"

namespace kempf {

namespace {

Coord floordiv(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Sum-zero rows for the special-linear factors of g: the sublattice of
// cocharacters actually available to an SL block.
std::vector<std::vector<Coord>> special_linear_rows(const GroupDescriptor& g) {
  std::vector<std::vector<Coord>> rows;
  for (size_t i = 0; i < g.components().size(); ++i) {
    if (!g.components()[i].special) continue;
    std::vector<Coord> row(g.rank(), 0);
    auto [b, e] = g.blocks()[i];
    for (int c = b; c < e; ++c) row[c] = 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

WeightedPoint::WeightedPoint(std::vector<std::pair<Weight, Rat>> entries, GroupDescriptor g)
    : group(std::move(g)) {
  for (auto& [chi, coeff] : entries) {
    require_dimension(chi.covector.size(), static_cast<size_t>(group.rank()),
                      "weight covector");
    if (coeff == 0)
      throw ValidationError("ZeroCoefficient",
                            "weighted points must not carry zero coefficients");
    std::vector<Coord> canon = chi.covector;
    for (size_t i = 0; i < group.components().size(); ++i) {
      if (!group.components()[i].special) continue;
      auto [b, e] = group.blocks()[i];
      Coord sum = 0;
      for (int c = b; c < e; ++c) sum += canon[c];
      Coord shift = floordiv(sum, e - b);
      for (int c = b; c < e; ++c) canon[c] -= shift;
    }
    components[Weight(std::move(canon))] += coeff;
  }
  for (auto it = components.begin(); it != components.end();) {
    if (it->second == 0)
      it = components.erase(it);
    else
      ++it;
  }
}

std::vector<Weight> WeightedPoint::support() const {
  std::vector<Weight> s;
  s.reserve(components.size());
  for (const auto& [chi, c] : components) s.push_back(chi);
  return s;
}

ParabolicDescriptor parabolic_of(const TorusCocharacter& lambda) {
  ParabolicDescriptor out;
  for (auto [b, e] : lambda.group.blocks()) {
    std::map<Coord, std::vector<int>, std::greater<Coord>> by_weight;
    for (int c = b; c < e; ++c) by_weight[lambda.weights[c]].push_back(c);
    ParabolicDescriptor::ComponentFlag flag;
    for (auto& [w, coords] : by_weight) {
      flag.weights.push_back(w);
      flag.classes.push_back(coords);
    }
    out.components.push_back(std::move(flag));
  }
  return out;
}

bool limit_exists(const WeightedPoint& x, const TorusCocharacter& lambda) {
  for (const auto& [chi, c] : x.components)
    if (pairing(chi, lambda) < 0) return false;
  return true;
}

Int alpha(const WeightedPoint& x, const TorusCocharacter& lambda) {
  if (x.empty())
    throw ValidationError("ZeroPoint", "alpha of the zero point is undefined");
  bool first = true;
  Int min_pairing = 0;
  for (const auto& [chi, c] : x.components) {
    Int p = pairing(chi, lambda);
    if (first || p < min_pairing) min_pairing = p;
    first = false;
  }
  if (min_pairing < 0)
    throw ValidationError("NotInLimitSet",
                          "limit of lambda(t)·x does not exist (negative pairing)");
  return min_pairing > 0 ? min_pairing : Int(0);
}

bool MinNormResult::semistable() const { return is_zero(point); }

namespace {

struct WolfeOutcome {
  QVec point;
  std::vector<std::pair<int, Rat>> corral;  // (index into the point list, coefficient)
};

// Wolfe's minimum-norm-point algorithm over conv{pts}, with inner product
// (x,y) = xᵀ·bmat·y, entirely in rational arithmetic. Exactness makes every
// comparison decisive, so the classical termination argument (no corral
// repeats, norm strictly decreases) applies verbatim. Ties when selecting
// the entering point are broken by lexicographic order of the original
// covectors for deterministic output.
WolfeOutcome wolfe_min_norm(const std::vector<QVec>& pts, const QMat& bmat,
                            const std::vector<Weight>& order_keys) {
  const int m = static_cast<int>(pts.size());
  if (m == 0) throw InternalError("wolfe_min_norm called with no points");
  const long dim = pts[0].size();

  std::vector<QVec> bp(m);
  for (int i = 0; i < m; ++i) bp[i] = bmat * pts[i];
  QMat gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      Rat v = (pts[i].transpose() * bp[j])(0, 0);
      gram(i, j) = v;
      gram(j, i) = v;
    }

  int init = 0;
  for (int i = 1; i < m; ++i) {
    if (gram(i, i) < gram(init, init) ||
        (gram(i, i) == gram(init, init) && order_keys[i] < order_keys[init]))
      init = i;
  }

  std::vector<int> S{init};
  std::vector<Rat> w{Rat(1)};

  const int kIterationGuard = 100000;
  for (int iter = 0;; ++iter) {
    if (iter > kIterationGuard)
      throw InternalError("minimum-norm-point iteration guard tripped");

    // Pairings of the current corral point x = Σ w_i v_{S_i} with everything.
    std::vector<Rat> xv(m, Rat(0));
    for (size_t si = 0; si < S.size(); ++si)
      for (int k = 0; k < m; ++k) xv[k] += w[si] * gram(S[si], k);
    Rat xx(0);
    for (size_t si = 0; si < S.size(); ++si) xx += w[si] * xv[S[si]];

    int entering = 0;
    for (int k = 1; k < m; ++k) {
      if (xv[k] < xv[entering] ||
          (xv[k] == xv[entering] && order_keys[k] < order_keys[entering]))
        entering = k;
    }
    if (xv[entering] >= xx) break;  // optimality: (v_k, x) ≥ (x, x) for all k

    S.push_back(entering);
    w.push_back(Rat(0));

    for (;;) {
      // Affine minimizer over the current set: minimize uᵀGu s.t. Σu = 1.
      const int s = static_cast<int>(S.size());
      QMat kkt = QMat::Zero(s + 1, s + 1);
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) kkt(a, b) = gram(S[a], S[b]);
      for (int a = 0; a < s; ++a) {
        kkt(a, s) = 1;
        kkt(s, a) = 1;
      }
      QVec rhs = QVec::Zero(s + 1);
      rhs(s) = 1;
      QVec sol = solve_square(kkt, rhs);  // nonsingular: S is affinely independent

      bool interior = true;
      for (int a = 0; a < s; ++a)
        if (sol(a) <= 0) interior = false;
      if (interior) {
        for (int a = 0; a < s; ++a) w[a] = sol(a);
        break;
      }

      Rat theta(1);
      for (int a = 0; a < s; ++a) {
        if (sol(a) < 0) {
          Rat t = w[a] / (w[a] - sol(a));
          if (t < theta) theta = t;
        }
      }
      if (theta <= 0)
        throw InternalError("degenerate zero step in the minimum-norm search");
      std::vector<int> next_s;
      std::vector<Rat> next_w;
      for (int a = 0; a < s; ++a) {
        Rat z = (Rat(1) - theta) * w[a] + theta * sol(a);
        if (z > 0) {
          next_s.push_back(S[a]);
          next_w.push_back(z);
        }
      }
      if (next_s.empty())
        throw InternalError("minimum-norm search pruned every corral point");
      S = std::move(next_s);
      w = std::move(next_w);
    }
  }

  WolfeOutcome out;
  out.point = QVec::Zero(dim);
  Rat total(0);
  for (size_t si = 0; si < S.size(); ++si) {
    out.point += w[si] * pts[S[si]];
    out.corral.emplace_back(S[si], w[si]);
    total += w[si];
  }
  if (total != 1) throw InternalError("corral coefficients do not sum to one");
  std::sort(out.corral.begin(), out.corral.end(),
            [&](const auto& a, const auto& b) {
              return order_keys[a.first] < order_keys[b.first];
            });
  return out;
}

// Independent subset of integer constraint rows, as a rational matrix
// (dependent rows are dropped: they cut out the same subspace).
QMat independent_rows(const std::vector<std::vector<Coord>>& constraints, long n) {
  std::vector<QVec> keep;
  IncrementalSpan span(n);
  for (const auto& row : constraints) {
    if (static_cast<long>(row.size()) != n)
      throw ValidationError("DimensionMismatch", "constraint row length mismatch");
    QVec v(n);
    for (long i = 0; i < n; ++i) v(i) = Rat(static_cast<long>(row[i]));
    if (span.add(v)) keep.push_back(v);
  }
  QMat c(keep.size(), n);
  for (size_t r = 0; r < keep.size(); ++r) c.row(r) = keep[r].transpose();
  return c;
}

MinNormResult run_min_norm(const std::vector<Weight>& support, const LengthForm& form,
                           const std::vector<std::vector<Coord>>& constraints) {
  if (support.empty())
    throw ValidationError("ZeroPoint", "minimum-norm point of an empty support");
  const long n = form.rank();
  QMat binv = inverse(form.matrix);

  std::vector<QVec> pts;
  pts.reserve(support.size());
  for (const auto& chi : support) {
    require_dimension(chi.covector.size(), static_cast<size_t>(n), "support covector");
    pts.push_back(binv * chi.as_qvec());
  }

  QMat c = independent_rows(constraints, n);
  if (c.rows() > 0) {
    // B-orthogonal projection onto {λ : Cλ = 0}: v ↦ v − B⁻¹Cᵀ(CB⁻¹Cᵀ)⁻¹Cv.
    QMat mid = inverse(QMat(c * binv * c.transpose()));
    QMat proj = binv * c.transpose() * mid * c;
    for (auto& v : pts) v -= proj * v;
  }

  WolfeOutcome wolfe = wolfe_min_norm(pts, form.matrix, support);
  MinNormResult out;
  out.point = std::move(wolfe.point);
  for (const auto& [idx, coeff] : wolfe.corral)
    out.certificate.emplace_back(support[idx], coeff);
  return out;
}

std::vector<Coord> primitive_from_ray(const QVec& p) {
  Int scale = 1;
  for (long i = 0; i < p.size(); ++i) scale = int_lcm(scale, p(i).get_den());
  Int content = 0;
  std::vector<Int> z(p.size());
  for (long i = 0; i < p.size(); ++i) {
    z[i] = p(i).get_num() * (scale / p(i).get_den());
    content = int_gcd(content, z[i]);
  }
  if (content == 0) throw InternalError("primitive direction of the zero vector");
  std::vector<Coord> out(p.size());
  for (long i = 0; i < p.size(); ++i) {
    auto v = to_coord(z[i] / content);
    if (!v) throw InternalError("primitive optimal cocharacter overflows Coord");
    out[i] = *v;
  }
  return out;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Weight>& support, const LengthForm& form) {
  return run_min_norm(support, form, {});
}

MinNormResult min_norm_point_constrained(const std::vector<Weight>& support,
                                         const LengthForm& form,
                                         const std::vector<std::vector<Coord>>& constraints) {
  return run_min_norm(support, form, constraints);
}

TorusOptimalResult torus_optimal_constrained(const WeightedPoint& x, const LengthForm& form,
                                             const std::vector<std::vector<Coord>>& constraints) {
  if (x.empty())
    throw ValidationError("ZeroPoint", "cannot destabilize the zero point");
  if (form.rank() != x.group.rank())
    throw ValidationError("DimensionMismatch", "form rank must match the group rank");

  std::vector<std::vector<Coord>> rows = special_linear_rows(x.group);
  rows.insert(rows.end(), constraints.begin(), constraints.end());

  MinNormResult mn = run_min_norm(x.support(), form, rows);
  if (mn.semistable()) return SemistableCertificate{mn.certificate};

  TorusCocharacter prim(primitive_from_ray(mn.point), x.group);
  for (const auto& row : constraints) {
    Int acc = 0;
    for (size_t i = 0; i < row.size(); ++i)
      acc += Int(static_cast<long>(row[i])) * Int(static_cast<long>(prim.weights[i]));
    if (acc != 0)
      throw InternalError("optimal direction escaped the constraint sublattice");
  }

  Int a = alpha(x, prim);
  if (a <= 0)
    throw InternalError("optimal cocharacter has nonpositive alpha");
  Rat q = squared_length(form, prim);
  Rat ratio = Rat(a * a) / q;
  Rat norm_sq = (mn.point.transpose() * form.matrix * mn.point)(0, 0);
  if (ratio != norm_sq)
    throw InternalError("duality mismatch: primitive ratio differs from the min-norm value");

  ParabolicDescriptor parabolic = parabolic_of(prim);
  return OptimalClassReport{ratio,    std::move(prim),           a,
                            mn.point, std::move(mn.certificate), std::move(parabolic)};
}

TorusOptimalResult torus_optimal(const WeightedPoint& x, const LengthForm& form) {
  return torus_optimal_constrained(x, form, {});
}

namespace {

inline Coord small_value(long long v) { return v; }
inline Coord small_value(const Int& v) { return static_cast<Coord>(v.get_si()); }

// The box search is templated on the scalar so the common case runs on
// machine integers. certify_int64 computes worst-case magnitudes and only
// unlocks that path when every intermediate provably fits.
template <typename S>
struct OracleProblem {
  int n = 0;
  int bound = 0;
  std::vector<std::vector<S>> chis;
  std::vector<std::vector<S>> bform;
  std::vector<std::vector<S>> filters;
  std::vector<int> forced_block_begin;  // per coordinate: block start if forced, else -1

  bool have_best = false;
  S best_alpha{};
  S best_q{};
  std::set<std::vector<Coord>> argmax;

  std::vector<S> lam;

  void candidate() {
    for (const auto& row : filters) {
      S acc{};
      for (int i = 0; i < n; ++i) acc += row[i] * lam[i];
      if (acc != 0) return;
    }
    bool first = true;
    S minp{};
    for (const auto& chi : chis) {
      S acc{};
      for (int i = 0; i < n; ++i) acc += chi[i] * lam[i];
      if (first || acc < minp) minp = acc;
      first = false;
      if (minp <= 0) return;
    }
    S q{};
    for (int i = 0; i < n; ++i) {
      S rowacc{};
      for (int j = 0; j < n; ++j) rowacc += bform[i][j] * lam[j];
      q += lam[i] * rowacc;
    }
    int verdict;  // -1 worse, 0 tie, 1 better
    if (!have_best) {
      verdict = 1;
    } else {
      S lhs = minp * minp * best_q;
      S rhs = best_alpha * best_alpha * q;
      verdict = lhs > rhs ? 1 : (lhs == rhs ? 0 : -1);
    }
    if (verdict < 0) return;
    if (verdict > 0) {
      have_best = true;
      best_alpha = minp;
      best_q = q;
      argmax.clear();
    }
    std::vector<Coord> as_coord(n);
    Coord g = 0;
    for (int i = 0; i < n; ++i) {
      as_coord[i] = small_value(lam[i]);
      g = std::gcd(g, as_coord[i]);
    }
    for (int i = 0; i < n; ++i) as_coord[i] /= g;
    argmax.insert(std::move(as_coord));
  }

  void enumerate(int pos, std::vector<S>& block_sums, const GroupDescriptor& group) {
    if (pos == n) {
      candidate();
      return;
    }
    int comp = group.component_of(pos);
    if (forced_block_begin[pos] >= 0) {
      S val = -block_sums[comp];
      if (val < S(-bound) || val > S(bound)) return;
      lam[pos] = val;
      enumerate(pos + 1, block_sums, group);
      return;
    }
    for (int v = -bound; v <= bound; ++v) {
      lam[pos] = S(v);
      block_sums[comp] += S(v);
      enumerate(pos + 1, block_sums, group);
      block_sums[comp] -= S(v);
    }
  }
};

// True iff every intermediate of the int64 search fits with margin.
bool certify_int64(const WeightedPoint& x, const LengthForm& form, int bound,
                   const std::vector<std::vector<Coord>>& filters) {
  const Int limit = Int(1) << 62;
  const long n = form.rank();
  Int amax = 0;
  for (const auto& [chi, c] : x.components) {
    Int s = 0;
    for (Coord v : chi.covector) s += Int(static_cast<long>(v < 0 ? -v : v));
    s *= bound;
    if (s > amax) amax = s;
  }
  Int qmax = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Rat e = form.matrix(i, j);
      qmax += abs(e.get_num());
    }
  qmax *= Int(bound) * Int(bound);
  Int fmax = 0;
  for (const auto& row : filters) {
    Int s = 0;
    for (Coord v : row) s += Int(static_cast<long>(v < 0 ? -v : v));
    s *= bound;
    if (s > fmax) fmax = s;
  }
  return amax < limit && qmax < limit && fmax < limit && amax * amax * qmax < limit;
}

template <typename S>
OracleResult run_oracle(const WeightedPoint& x, const LengthForm& form, int bound,
                        const std::vector<std::vector<Coord>>& filters) {
  OracleProblem<S> prob;
  prob.n = form.rank();
  prob.bound = bound;
  for (const auto& [chi, c] : x.components) {
    std::vector<S> row(prob.n);
    for (int i = 0; i < prob.n; ++i) row[i] = S(static_cast<long>(chi.covector[i]));
    prob.chis.push_back(std::move(row));
  }
  prob.bform.assign(prob.n, std::vector<S>(prob.n));
  for (int i = 0; i < prob.n; ++i)
    for (int j = 0; j < prob.n; ++j) {
      auto v = to_coord(form.matrix(i, j).get_num());
      if (!v) throw InternalError("oracle form entry overflow");
      prob.bform[i][j] = S(static_cast<long>(*v));
    }
  for (const auto& row : filters) {
    std::vector<S> r(prob.n);
    for (int i = 0; i < prob.n; ++i) r[i] = S(static_cast<long>(row[i]));
    prob.filters.push_back(std::move(r));
  }
  prob.forced_block_begin.assign(prob.n, -1);
  for (size_t ci = 0; ci < x.group.components().size(); ++ci) {
    if (!x.group.components()[ci].special) continue;
    auto [b, e] = x.group.blocks()[ci];
    prob.forced_block_begin[e - 1] = b;
  }
  prob.lam.assign(prob.n, S{});
  std::vector<S> block_sums(x.group.components().size(), S{});
  prob.enumerate(0, block_sums, x.group);

  OracleResult out;
  if (!prob.have_best) {
    out.max_ratio_sq = Rat(0);
    return out;
  }
  Int a = 0, q = 0;
  if constexpr (std::is_same_v<S, Int>) {
    a = prob.best_alpha;
    q = prob.best_q;
  } else {
    a = Int(static_cast<long>(prob.best_alpha));
    q = Int(static_cast<long>(prob.best_q));
  }
  out.max_ratio_sq = Rat(a * a) / Rat(q);
  out.primitive_argmax.assign(prob.argmax.begin(), prob.argmax.end());
  return out;
}

}  // namespace

OracleResult brute_force_oracle_constrained(const WeightedPoint& x, const LengthForm& form,
                                            int bound,
                                            const std::vector<std::vector<Coord>>& constraints) {
  if (x.empty())
    throw ValidationError("ZeroPoint", "cannot destabilize the zero point");
  if (bound < 1)
    throw ValidationError("BadBound", "oracle bound must be at least 1");
  if (form.rank() != x.group.rank())
    throw ValidationError("DimensionMismatch", "form rank must match the group rank");
  if (certify_int64(x, form, bound, constraints))
    return run_oracle<long long>(x, form, bound, constraints);
  return run_oracle<Int>(x, form, bound, constraints);
}

OracleResult brute_force_oracle(const WeightedPoint& x, const LengthForm& form, int bound) {
  return brute_force_oracle_constrained(x, form, bound, {});
}

}  // namespace kempf
