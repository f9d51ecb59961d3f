#include "kempf/jobs.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "kempf/errors.hpp"
#include "kempf/linalg.hpp"

namespace kempf {

namespace {

int parse_small_int(const std::string& text, const std::string& where) {
  if (text.empty()) throw ParseError(where + ": expected an integer");
  size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i >= text.size()) throw ParseError(where + ": expected an integer");
  long value = 0;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw ParseError(where + ": '" + text + "' is not an integer");
    value = value * 10 + (text[i] - '0');
    if (value > 1000000) throw ParseError(where + ": '" + text + "' is out of range");
  }
  return static_cast<int>(text[0] == '-' ? -value : value);
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, sep)) out.push_back(piece);
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

const GroupDescriptor& require_group(const JobSpec& job) {
  if (!job.group) throw ParseError(job.command + ": missing required field 'group'");
  return *job.group;
}

const std::vector<std::vector<Coord>>& require_weights(const JobSpec& job) {
  if (!job.weight_rows)
    throw ParseError(job.command + ": missing required field 'weights'");
  return *job.weight_rows;
}

const QMat& require_matrix(const JobSpec& job) {
  if (!job.matrix) throw ParseError(job.command + ": missing required field 'matrix'");
  return *job.matrix;
}

WeightedPoint point_from_rows(const std::vector<std::vector<Coord>>& rows,
                              const GroupDescriptor& g) {
  std::vector<std::pair<Weight, Rat>> entries;
  entries.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != g.rank())
      throw ValidationError("DimensionMismatch",
                            "weights[" + std::to_string(i) + "] has length " +
                                std::to_string(rows[i].size()) + ", expected " +
                                std::to_string(g.rank()));
    entries.emplace_back(Weight(rows[i]), Rat(1));
  }
  return WeightedPoint(std::move(entries), g);
}

Json weight_rows_to_json(const std::vector<std::vector<Coord>>& rows) {
  Json arr = Json::array();
  for (const auto& row : rows) arr.push_back(coords_to_json(row));
  return arr;
}

}  // namespace

LengthForm FormSpec::resolve(const GroupDescriptor& g) const {
  switch (kind) {
    case Kind::Identity:
      return LengthForm::identity(g);
    case Kind::Matrix:
      return LengthForm(matrix, g);
    case Kind::Seed:
      return weyl_invariant_form(seed, g);
  }
  throw InternalError("unhandled form kind");
}

Json FormSpec::to_json() const {
  Json out;
  switch (kind) {
    case Kind::Identity:
      out["kind"] = "identity";
      break;
    case Kind::Matrix:
      out["kind"] = "matrix";
      out["matrix"] = matrix_to_json(matrix);
      break;
    case Kind::Seed:
      out["kind"] = "seed";
      out["seed"] = matrix_to_json(seed);
      break;
  }
  return out;
}

FormSpec FormSpec::from_json(const Json& j) {
  FormSpec spec;
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("form: expected an object with a 'kind' field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") {
    spec.kind = Kind::Identity;
  } else if (kind == "matrix") {
    spec.kind = Kind::Matrix;
    if (!j.contains("matrix")) throw ParseError("form: 'matrix' kind needs a matrix");
    spec.matrix = matrix_from_json(j["matrix"], "form.matrix");
  } else if (kind == "seed") {
    spec.kind = Kind::Seed;
    if (!j.contains("seed")) throw ParseError("form: 'seed' kind needs a seed matrix");
    spec.seed = matrix_from_json(j["seed"], "form.seed");
  } else {
    throw ParseError("form: unknown kind '" + kind + "'");
  }
  return spec;
}

GroupDescriptor parse_group_tag(const std::string& tag) {
  std::string normalized;
  normalized.reserve(tag.size());
  for (char c : tag) {
    if (c == '(')
      normalized.push_back(':');
    else if (c != ')')
      normalized.push_back(c);
  }
  return GroupDescriptor::parse(normalized);
}

SubgroupDescriptor parse_subgroup(const std::string& text, const GroupDescriptor& g) {
  if (text == "full") return SubgroupDescriptor::full(g);
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError(
        "subgroup: expected 'full', 'levi:1,2|3,4', 'centralizer:diag(...)', or "
        "'diagonal:r', got '" +
        text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "levi") {
    std::vector<std::vector<int>> blocks;
    for (const std::string& part : split_on(rest, '|')) {
      std::vector<int> block;
      for (const std::string& item : split_on(part, ',')) {
        int c = parse_small_int(item, "subgroup levi coordinate");
        if (c < 1 || c > g.rank())
          throw ValidationError("BadSubgroup",
                                "levi coordinate " + std::to_string(c) +
                                    " outside 1.." + std::to_string(g.rank()));
        block.push_back(c - 1);
      }
      blocks.push_back(std::move(block));
    }
    return SubgroupDescriptor::levi(g, std::move(blocks));
  }
  if (kind == "diagonal") {
    return SubgroupDescriptor::diagonal_embedding(
        g, parse_small_int(rest, "subgroup diagonal copy count"));
  }
  if (kind == "centralizer") {
    const std::string prefix = "diag(";
    if (rest.size() < prefix.size() + 1 || rest.compare(0, prefix.size(), prefix) != 0 ||
        rest.back() != ')')
      throw ParseError("subgroup: centralizer expects 'centralizer:diag(a,b,...)'");
    const std::string inner = rest.substr(prefix.size(), rest.size() - prefix.size() - 1);
    std::vector<Rat> entries;
    for (const std::string& item : split_on(inner, ',')) {
      auto r = parse_rat(item);
      if (!r) throw ParseError("subgroup: malformed diagonal entry '" + item + "'");
      entries.push_back(*r);
    }
    if (static_cast<int>(entries.size()) != g.rank())
      throw ValidationError("DimensionMismatch",
                            "centralizer diagonal has " + std::to_string(entries.size()) +
                                " entries, expected " + std::to_string(g.rank()));
    QMat m = QMat::Zero(g.rank(), g.rank());
    for (int c = 0; c < g.rank(); ++c) m(c, c) = entries[c];
    return centralizer_subgroup(m, g);
  }
  throw ParseError("subgroup: unknown kind '" + kind + "'");
}

namespace {

JobResult run_optimize(const JobSpec& job) {
  const GroupDescriptor& g = require_group(job);
  const auto& rows = require_weights(job);
  WeightedPoint x = point_from_rows(rows, g);
  LengthForm form = job.form.resolve(g);
  TorusOptimalResult res = torus_optimal(x, form);

  Json report;
  report["command"] = "optimize";
  report["group"] = g.tag();
  report["weights"] = weight_rows_to_json(rows);
  report["form"] = job.form.to_json();
  report["result"] = to_json(res);
  const int code = std::holds_alternative<SemistableCertificate>(res) ? 2 : 0;
  return {std::move(report), code};
}

JobResult run_nilpotent(const JobSpec& job) {
  const GroupDescriptor& g = require_group(job);
  const QMat& e = require_matrix(job);
  validate_lie_element(e, g);
  LengthForm form = job.form.resolve(g);

  GroupAssociatedData ga = associated_data_for(e, g);
  OptimalRayCheck check = optimal_ray_check(e, form, g);
  CentralizerDecomposition cd = centralizer_decomposition(ga.jordan_e, ga.lambda_a);

  Json report;
  report["command"] = "nilpotent";
  report["group"] = g.tag();
  report["matrix"] = matrix_to_json(e);
  report["form"] = job.form.to_json();
  report["associated"] = to_json(ga);
  report["optimal_ray"] = to_json(check);
  report["centralizer"] = to_json(cd);
  return {std::move(report), 0};
}

JobResult run_transfer(const JobSpec& job) {
  const GroupDescriptor& g = require_group(job);
  const QMat& e = require_matrix(job);
  if (!job.subgroup)
    throw ParseError(job.command + ": missing required field 'subgroup'");
  SubgroupDescriptor h = parse_subgroup(*job.subgroup, g);
  LengthForm form = job.form.resolve(g);

  TransferReport optimal = check_optimal_transfer(e, h, form);
  AssociatedTransferReport associated = check_associated_transfer(e, h);

  Json report;
  report["command"] = "transfer-check";
  report["group"] = g.tag();
  report["matrix"] = matrix_to_json(e);
  report["subgroup"] = *job.subgroup;
  report["subgroup_resolved"] = h.describe();
  report["form"] = job.form.to_json();
  report["optimal_transfer"] = to_json(optimal);
  report["associated_transfer"] = to_json(associated);
  return {std::move(report), 0};
}

JobResult run_oracle(const JobSpec& job) {
  const GroupDescriptor& g = require_group(job);
  const auto& rows = require_weights(job);
  WeightedPoint x = point_from_rows(rows, g);
  LengthForm form = job.form.resolve(g);
  OracleResult res = brute_force_oracle(x, form, job.oracle_bound);

  Json report;
  report["command"] = "oracle";
  report["group"] = g.tag();
  report["weights"] = weight_rows_to_json(rows);
  report["form"] = job.form.to_json();
  report["bound"] = job.oracle_bound;
  report["result"] = to_json(res);
  const int code = (res.max_ratio_sq == 0) ? 2 : 0;
  return {std::move(report), code};
}

// Deterministic across standard libraries: mt19937_64 is fully specified,
// the distributions in <random> are not, so we draw directly.
int draw_in(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<int> draw_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1))]);
  return perm;
}

Partition contiguous_partition(const std::vector<int>& parts) {
  Partition p;
  p.parts = parts;
  int offset = 0;
  for (int d : parts) {
    std::vector<int> block(d);
    std::iota(block.begin(), block.end(), offset);
    offset += d;
    p.block_coordinates.push_back(std::move(block));
  }
  return p;
}

/// Evaluates `body` and folds exceptions into a failed verdict, so a sweep
/// reports a broken property instead of aborting the whole run.
template <typename F>
Json property_verdict(F&& body) {
  Json verdict;
  try {
    body(verdict);
  } catch (const std::exception& ex) {
    verdict["pass"] = false;
    verdict["error"] = ex.what();
  }
  return verdict;
}

}  // namespace

Json sweep(int n_max, std::uint64_t seed) {
  if (n_max < 0)
    throw ValidationError("BadBound", "sweep nmax must be nonnegative");
  if (n_max > 6)
    throw LimitExceeded("sweep nmax is capped at 6 (partition by subgroup growth)");

  std::mt19937_64 rng(seed);
  Json cases = Json::array();
  long passed = 0, failed = 0;

  for (int n = 1; n <= n_max; ++n) {
    GroupDescriptor g = GroupDescriptor::general_linear(n);
    LengthForm identity = LengthForm::identity(g);
    for (const auto& parts : partitions_of(n)) {
      Partition p = contiguous_partition(parts);
      QMat e = jordan_matrix(p);
      const bool zero = is_zero(e);
      AssociatedData ad = associated_cocharacter(p);

      Json properties;
      properties["associated"] = property_verdict([&](Json& v) {
        VerifyAssociated checks = verify_associated(e, ad.lambda_a, g);
        bool ok = checks.all() && ad.check_degree_two && ad.check_distinguished &&
                  ad.check_derived_image;
        v["pass"] = ok;
        if (!ok) v["counterexample"] = to_json(checks);
      });

      if (zero) {
        properties["optimal_ray"] = Json{{"skipped", "zero element has no optimal class"}};
      } else {
        properties["optimal_ray"] = property_verdict([&](Json& v) {
          OptimalRayCheck check = optimal_ray_check(e, identity, g);
          v["pass"] = true;
          v["ratio_sq"] = rat_to_json(check.report.optimal_ratio_sq);
          v["scaling_d"] = check.scaling_d.get_str();
        });
      }

      properties["centralizer"] = property_verdict([&](Json& v) {
        CentralizerDecomposition cd = centralizer_decomposition(e, ad.lambda_a);
        long formula = centralizer_dimension_formula(parts);
        bool ok = cd.negative_part_dim == 0 && cd.dim_c_e_lambda + cd.dim_re == formula;
        v["pass"] = ok;
        if (!ok) {
          Json detail = to_json(cd);
          detail["formula"] = formula;
          v["counterexample"] = std::move(detail);
        }
      });

      properties["transfer"] = property_verdict([&](Json& v) {
        const int nblocks = static_cast<int>(parts.size());
        long instances = 0;
        for (std::uint32_t mask = 0; mask < (1u << nblocks); ++mask) {
          QMat s = QMat::Zero(n, n);
          std::vector<Coord> signs(n, 1);
          for (int b = 0; b < nblocks; ++b)
            for (int c : p.block_coordinates[b]) signs[c] = (mask >> b) & 1 ? -1 : 1;
          for (int c = 0; c < n; ++c) s(c, c) = static_cast<long>(signs[c]);
          SubgroupDescriptor h = centralizer_subgroup(s, g);
          AssociatedTransferReport r = check_associated_transfer(e, h);
          ++instances;
          if (!r.holds_a || !r.holds_opt) {
            v["pass"] = false;
            Json detail = to_json(r);
            detail["signs"] = coords_to_json(signs);
            v["counterexample"] = std::move(detail);
            return;
          }
        }
        v["pass"] = true;
        v["instances"] = instances;
      });

      if (zero) {
        properties["conjugation"] = Json{{"skipped", "zero element has no optimal class"}};
      } else {
        properties["conjugation"] = property_verdict([&](Json& v) {
          TorusOptimalResult base = torus_optimal(adjoint_decompose(e, g), identity);
          const Rat base_value = std::get<OptimalClassReport>(base).optimal_ratio_sq;
          for (int trial = 0; trial < 3; ++trial) {
            QMat u = QMat::Identity(n, n);
            for (int j = 0; j < n; ++j)
              for (int k = j + 1; k < n; ++k) u(j, k) = draw_in(rng, -2, 2);
            std::vector<int> perm = draw_permutation(rng, n);
            QMat pm = QMat::Zero(n, n);
            for (int j = 0; j < n; ++j) pm(perm[j], j) = 1;
            QMat m = pm * u;
            QMat conj = m * e * inverse(m);
            TorusOptimalResult res = torus_optimal(adjoint_decompose(conj, g), identity);
            Rat value = std::holds_alternative<SemistableCertificate>(res)
                            ? Rat(0)
                            : std::get<OptimalClassReport>(res).optimal_ratio_sq;
            if (value > base_value) {
              v["pass"] = false;
              Json detail;
              detail["conjugator"] = matrix_to_json(m);
              detail["value_sq"] = rat_to_json(value);
              detail["base_value_sq"] = rat_to_json(base_value);
              v["counterexample"] = std::move(detail);
              return;
            }
          }
          v["pass"] = true;
          v["instances"] = 3;
        });
      }

      bool case_pass = true;
      for (const auto& [name, verdict] : properties.items()) {
        (void)name;
        if (verdict.contains("pass") && !verdict["pass"].get<bool>()) case_pass = false;
      }
      case_pass ? ++passed : ++failed;

      Json one;
      one["n"] = n;
      Json parr = Json::array();
      for (int d : parts) parr.push_back(d);
      one["partition"] = std::move(parr);
      one["properties"] = std::move(properties);
      one["pass"] = case_pass;
      cases.push_back(std::move(one));
    }
  }

  Json summary;
  summary["command"] = "sweep";
  summary["nmax"] = n_max;
  summary["seed"] = seed;
  summary["cases"] = std::move(cases);
  summary["total"] = passed + failed;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["all_pass"] = (failed == 0);
  return summary;
}

JobResult run(const JobSpec& job) {
  if (job.command == "optimize") return run_optimize(job);
  if (job.command == "nilpotent") return run_nilpotent(job);
  if (job.command == "transfer-check") return run_transfer(job);
  if (job.command == "oracle") return run_oracle(job);
  if (job.command == "sweep") {
    Json report = sweep(job.nmax, job.seed);
    const int code = report["all_pass"].get<bool>() ? 0 : 1;
    return {std::move(report), code};
  }
  throw ParseError("unknown command '" + job.command + "'");
}

JobSpec spec_from_report(const Json& report) {
  if (!report.is_object() || !report.contains("command"))
    throw ParseError("report: expected an object with a 'command' field");
  JobSpec job;
  job.command = report["command"].get<std::string>();
  auto need = [&](const char* key) -> const Json& {
    if (!report.contains(key))
      throw ParseError(std::string("report: missing embedded field '") + key + "'");
    return report[key];
  };
  if (job.command == "sweep") {
    job.nmax = need("nmax").get<int>();
    job.seed = need("seed").get<std::uint64_t>();
    return job;
  }
  job.group = parse_group_tag(need("group").get<std::string>());
  job.form = FormSpec::from_json(need("form"));
  if (job.command == "optimize" || job.command == "oracle")
    job.weight_rows = weight_rows_from_json(need("weights"), "weights");
  if (job.command == "oracle") job.oracle_bound = need("bound").get<int>();
  if (job.command == "nilpotent" || job.command == "transfer-check")
    job.matrix = matrix_from_json(need("matrix"), "matrix");
  if (job.command == "transfer-check") job.subgroup = need("subgroup").get<std::string>();
  return job;
}

}  // namespace kempf
