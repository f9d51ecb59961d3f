#include "kempf/jsonio.hpp"

#include "kempf/errors.hpp"

namespace kempf {

Json rat_to_json(const Rat& r) { return format_rat(r); }

Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    auto parsed = parse_rat(j.get<std::string>());
    if (parsed) return *parsed;
    throw ParseError(where + ": malformed rational '" + j.get<std::string>() + "'");
  }
  throw ParseError(where + ": expected a rational as \"p/q\" string or integer");
}

Json matrix_to_json(const QMat& m) {
  Json rows = Json::array();
  for (long j = 0; j < m.rows(); ++j) {
    Json row = Json::array();
    for (long k = 0; k < m.cols(); ++k) row.push_back(rat_to_json(m(j, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMat matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError(where + ": expected a nonempty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].empty())
      throw ParseError(where + "[" + std::to_string(r) + "]: expected a nonempty row");
    if (r == 0)
      cols = j[r].size();
    else if (j[r].size() != cols)
      throw ParseError(where + "[" + std::to_string(r) + "]: ragged rows");
  }
  QMat m(static_cast<long>(rows), static_cast<long>(cols));
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<long>(r), static_cast<long>(c)) = rat_from_json(
          j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return m;
}

Json vector_to_json(const QVec& v) {
  Json arr = Json::array();
  for (long i = 0; i < v.size(); ++i) arr.push_back(rat_to_json(v(i)));
  return arr;
}

Json coords_to_json(const std::vector<Coord>& v) {
  Json arr = Json::array();
  for (Coord c : v) arr.push_back(static_cast<long long>(c));
  return arr;
}

std::vector<Coord> coords_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of integers");
  std::vector<Coord> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& entry = j[i];
    if (!entry.is_number_integer())
      throw ParseError(where + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(static_cast<Coord>(entry.get<long long>()));
  }
  return out;
}

std::vector<std::vector<Coord>> weight_rows_from_json(const Json& j,
                                                      const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError(where + ": expected a nonempty array of weight covectors");
  std::vector<std::vector<Coord>> rows;
  rows.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    rows.push_back(coords_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return rows;
}

Json to_json(const Weight& w) { return coords_to_json(w.covector); }

Json to_json(const TorusCocharacter& lambda) { return coords_to_json(lambda.weights); }

Json to_json(const WeightedPoint& x) {
  Json arr = Json::array();
  for (const auto& [weight, coeff] : x.components) {
    Json entry;
    entry["weight"] = to_json(weight);
    entry["coefficient"] = rat_to_json(coeff);
    arr.push_back(std::move(entry));
  }
  Json out;
  out["group"] = x.group.tag();
  out["components"] = std::move(arr);
  return out;
}

Json to_json(const ParabolicDescriptor& p) {
  Json comps = Json::array();
  for (const auto& comp : p.components) {
    Json flag;
    flag["weights"] = coords_to_json(comp.weights);
    Json classes = Json::array();
    for (const auto& cls : comp.classes) {
      Json one = Json::array();
      for (int c : cls) one.push_back(c);
      classes.push_back(std::move(one));
    }
    flag["classes"] = std::move(classes);
    comps.push_back(std::move(flag));
  }
  Json out;
  out["components"] = std::move(comps);
  return out;
}

Json certificate_to_json(const std::vector<std::pair<Weight, Rat>>& certificate) {
  Json arr = Json::array();
  for (const auto& [weight, coeff] : certificate) {
    Json entry;
    entry["weight"] = to_json(weight);
    entry["coefficient"] = rat_to_json(coeff);
    arr.push_back(std::move(entry));
  }
  return arr;
}

Json to_json(const OptimalClassReport& r) {
  Json out;
  out["optimal_ratio_sq"] = rat_to_json(r.optimal_ratio_sq);
  out["primitive_optimal"] = to_json(r.primitive_optimal);
  out["alpha_at_primitive"] = r.alpha_at_primitive.get_str();
  out["min_norm_point"] = vector_to_json(r.min_norm_point);
  out["certificate"] = certificate_to_json(r.certificate);
  out["parabolic"] = to_json(r.parabolic);
  return out;
}

Json to_json(const SemistableCertificate& c) {
  Json out;
  out["semistable"] = true;
  out["certificate"] = certificate_to_json(c.certificate);
  return out;
}

Json to_json(const TorusOptimalResult& r) {
  if (std::holds_alternative<OptimalClassReport>(r))
    return to_json(std::get<OptimalClassReport>(r));
  return to_json(std::get<SemistableCertificate>(r));
}

Json to_json(const OracleResult& r) {
  Json out;
  out["max_ratio_sq"] = rat_to_json(r.max_ratio_sq);
  Json argmax = Json::array();
  for (const auto& lam : r.primitive_argmax) argmax.push_back(coords_to_json(lam));
  out["primitive_argmax"] = std::move(argmax);
  return out;
}

Json to_json(const Partition& p) {
  Json out;
  Json parts = Json::array();
  for (int d : p.parts) parts.push_back(d);
  out["parts"] = std::move(parts);
  Json blocks = Json::array();
  for (const auto& block : p.block_coordinates) {
    Json one = Json::array();
    for (int c : block) one.push_back(c);
    blocks.push_back(std::move(one));
  }
  out["block_coordinates"] = std::move(blocks);
  return out;
}

Json to_json(const CentralizerDecomposition& d) {
  Json out;
  Json grades = Json::array();
  for (const auto& [degree, dim] : d.dims_by_grade) {
    Json entry;
    entry["degree"] = static_cast<long long>(degree);
    entry["dim"] = dim;
    grades.push_back(std::move(entry));
  }
  out["dims_by_grade"] = std::move(grades);
  out["dim_re"] = d.dim_re;
  out["dim_c_e_lambda"] = d.dim_c_e_lambda;
  out["negative_part_dim"] = d.negative_part_dim;
  return out;
}

Json to_json(const OptimalRayCheck& c) {
  Json out;
  out["lambda_a"] = to_json(c.lambda_a);
  out["primitive_optimal"] = to_json(c.primitive_optimal);
  out["scaling_d"] = c.scaling_d.get_str();
  out["optimal"] = to_json(c.report);
  return out;
}

Json to_json(const VerifyAssociated& v) {
  Json out;
  out["degree_two"] = v.degree_two;
  out["distinguished"] = v.distinguished;
  out["derived_image"] = v.derived_image;
  out["all"] = v.all();
  return out;
}

Json to_json(const GroupAssociatedData& a) {
  Json out;
  out["lambda_a"] = to_json(a.lambda_a);
  Json blocks = Json::array();
  for (const auto& block : a.levi_blocks) {
    Json one = Json::array();
    for (int c : block) one.push_back(c);
    blocks.push_back(std::move(one));
  }
  out["levi_blocks"] = std::move(blocks);
  Json partitions = Json::array();
  for (const auto& p : a.component_partitions) partitions.push_back(to_json(p));
  out["component_partitions"] = std::move(partitions);
  out["base_change"] = matrix_to_json(a.base_change);
  out["jordan_form"] = matrix_to_json(a.jordan_e);
  return out;
}

Json to_json(const TransferReport& r) {
  Json out;
  out["holds"] = r.holds;
  out["semistable"] = r.semistable;
  out["value_g_sq"] = rat_to_json(r.value_g_sq);
  out["value_h_sq"] = rat_to_json(r.value_h_sq);
  if (r.lambda_g) out["lambda_g"] = to_json(*r.lambda_g);
  if (r.lambda_h) out["lambda_h"] = to_json(*r.lambda_h);
  return out;
}

Json to_json(const AssociatedTransferReport& r) {
  Json out;
  out["holds_a"] = r.holds_a;
  out["holds_opt"] = r.holds_opt;
  out["lambda_h"] = to_json(r.lambda_h);
  out["lambda_g"] = to_json(r.lambda_g);
  return out;
}

}  // namespace kempf
