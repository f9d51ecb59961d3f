#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kempf/jsonio.hpp"

namespace kempf {

/// How the length form of a job is specified.
struct FormSpec {
  enum class Kind { Identity, Matrix, Seed };
  Kind kind = Kind::Identity;
  QMat matrix;  // Kind::Matrix: used as the form (Weyl invariance is checked)
  QMat seed;    // Kind::Seed: summed over the Weyl group first

  LengthForm resolve(const GroupDescriptor& g) const;
  Json to_json() const;
  static FormSpec from_json(const Json& j);
};

/// One resolved unit of work; the CLI builds these from flags, tests build
/// them directly.
struct JobSpec {
  std::string command;  // optimize | nilpotent | transfer-check | oracle | sweep
  std::optional<GroupDescriptor> group;
  std::optional<std::vector<std::vector<Coord>>> weight_rows;
  std::optional<QMat> matrix;
  FormSpec form;
  int oracle_bound = 5;
  std::optional<std::string> subgroup;
  int nmax = 0;
  std::uint64_t seed = 42;
};

struct JobResult {
  Json report;
  int exit_code = 0;  // 0: done; 2: semistable signal; sweep: 1 on any failed case
};

/// Accepts "GL:3", "GL(3)", "SL:2xGL:3", "SL(2)xGL(3)".
GroupDescriptor parse_group_tag(const std::string& tag);

/// Grammar: "full" | "levi:1,2|3,4" (1-based coordinates) |
/// "centralizer:diag(1,1,-1,-1)" | "diagonal:2".
SubgroupDescriptor parse_subgroup(const std::string& text, const GroupDescriptor& g);

/// Dispatches a job to the library and assembles the report. Reports embed
/// the inputs they were computed from; identical specs produce identical
/// bytes. Throws ParseError / ValidationError / LimitExceeded /
/// InternalError as the library does.
JobResult run(const JobSpec& job);

/// Rebuilds the JobSpec a report embeds, for the re-run round-trip.
JobSpec spec_from_report(const Json& report);

/// The invariant suite over every partition of every n ≤ n_max (n_max ≤ 6):
/// associated-cocharacter checks, optimal-ray placement, centralizer
/// grading against the dimension formula, transfer over all compatible
/// sign-vector centralizers, and seeded conjugation sanity. Emits one case
/// per partition with per-property verdicts and counterexample payloads.
Json sweep(int n_max, std::uint64_t seed);

}  // namespace kempf
