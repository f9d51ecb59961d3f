#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "kempf/nilpotent.hpp"
#include "kempf/solver.hpp"
#include "kempf/transfer.hpp"

namespace kempf {

// ordered_json keeps insertion order, which together with the sorted
// containers used throughout makes serialized reports byte-reproducible.
using Json = nlohmann::ordered_json;

// --- scalars and containers -------------------------------------------------

/// Rationals travel as strings, "p" or "p/q", never as floats.
Json rat_to_json(const Rat& r);

/// Accepts a "p/q" string or a plain JSON integer. `where` names the field
/// in error messages.
Rat rat_from_json(const Json& j, const std::string& where);

/// Row-major array of rows of rational strings.
Json matrix_to_json(const QMat& m);
QMat matrix_from_json(const Json& j, const std::string& where);

Json vector_to_json(const QVec& v);

Json coords_to_json(const std::vector<Coord>& v);
std::vector<Coord> coords_from_json(const Json& j, const std::string& where);

/// A list of integer covectors (the --weights payload).
std::vector<std::vector<Coord>> weight_rows_from_json(const Json& j,
                                                      const std::string& where);

// --- report pieces ----------------------------------------------------------

Json to_json(const Weight& w);
Json to_json(const TorusCocharacter& lambda);
Json to_json(const WeightedPoint& x);
Json to_json(const ParabolicDescriptor& p);
Json certificate_to_json(const std::vector<std::pair<Weight, Rat>>& certificate);
Json to_json(const OptimalClassReport& r);
Json to_json(const SemistableCertificate& c);
Json to_json(const TorusOptimalResult& r);
Json to_json(const OracleResult& r);
Json to_json(const Partition& p);
Json to_json(const CentralizerDecomposition& d);
Json to_json(const OptimalRayCheck& c);
Json to_json(const VerifyAssociated& v);
Json to_json(const GroupAssociatedData& a);
Json to_json(const TransferReport& r);
Json to_json(const AssociatedTransferReport& r);

}  // namespace kempf
