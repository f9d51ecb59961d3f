#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "kempf/errors.hpp"
#include "kempf/jobs.hpp"

namespace {

using kempf::Json;

// '@file' pulls the payload from disk, anything else is taken verbatim.
std::string load_payload(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw kempf::ParseError("cannot read file '" + arg.substr(1) + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  return arg;
}

Json parse_payload(const std::string& arg, const std::string& where) {
  Json j = Json::parse(load_payload(arg), nullptr, false);
  if (j.is_discarded()) throw kempf::ParseError(where + ": malformed JSON payload");
  return j;
}

kempf::FormSpec parse_form(const std::string& arg) {
  kempf::FormSpec spec;
  if (arg.empty() || arg == "identity") return spec;
  const std::string seed_prefix = "seed:";
  if (arg.compare(0, seed_prefix.size(), seed_prefix) == 0) {
    spec.kind = kempf::FormSpec::Kind::Seed;
    spec.seed =
        kempf::matrix_from_json(parse_payload(arg.substr(seed_prefix.size()), "form"), "form");
    return spec;
  }
  spec.kind = kempf::FormSpec::Kind::Matrix;
  spec.matrix = kempf::matrix_from_json(parse_payload(arg, "form"), "form");
  return spec;
}

int default_oracle_bound() {
  const char* env = std::getenv("KEMPF_ORACLE_BOUND");
  if (!env || !*env) return 5;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1 || value > 1000)
    throw kempf::ParseError(std::string("KEMPF_ORACLE_BOUND: '") + env +
                            "' is not a bound in 1..1000");
  return static_cast<int>(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kempf-optimal destabilizing cocharacters, exactly over the rationals"};
  app.require_subcommand(1);

  std::string group_tag;
  std::string weights_arg;
  std::string matrix_arg;
  std::string form_arg = "identity";
  std::string subgroup_arg;
  int bound = 5;
  int nmax = 0;
  std::uint64_t seed = 42;

  const std::string group_help = "Group tag, e.g. GL:3, SL:2, SL:2xGL:2";
  const std::string weights_help = "JSON list of integer weight covectors (inline or @file)";
  const std::string matrix_help = "JSON rational matrix, row-major, entries \"p/q\" (inline or @file)";
  const std::string form_help = "identity | JSON matrix | seed:JSON matrix (summed over the Weyl group)";

  auto* optimize = app.add_subcommand(
      "optimize", "Maximize alpha(lambda)/|lambda| over the cocharacter lattice");
  optimize->add_option("--group", group_tag, group_help)->required();
  optimize->add_option("--weights", weights_arg, weights_help)->required();
  optimize->add_option("--form", form_arg, form_help);

  auto* nilpotent = app.add_subcommand(
      "nilpotent", "Associated cocharacter, optimal ray, and centralizer grading");
  nilpotent->add_option("--group", group_tag, group_help)->required();
  nilpotent->add_option("--matrix", matrix_arg, matrix_help)->required();
  nilpotent->add_option("--form", form_arg, form_help);

  auto* transfer = app.add_subcommand(
      "transfer-check", "Optimality transfer into a reductive subgroup");
  transfer->add_option("--group", group_tag, group_help)->required();
  transfer->add_option("--matrix", matrix_arg, matrix_help)->required();
  transfer
      ->add_option("--subgroup", subgroup_arg,
                   "full | levi:1,2|3,4 | centralizer:diag(1,1,-1,-1) | diagonal:r")
      ->required();
  transfer->add_option("--form", form_arg, form_help);

  auto* oracle = app.add_subcommand(
      "oracle", "Exhaustive lattice search over a box; the independent verifier");
  oracle->add_option("--group", group_tag, group_help)->required();
  oracle->add_option("--weights", weights_arg, weights_help)->required();
  oracle->add_option("--form", form_arg, form_help);
  oracle->add_option("--bound", bound,
                     "Box half-width (default 5, or env KEMPF_ORACLE_BOUND)");

  auto* sweep = app.add_subcommand(
      "sweep", "Invariant suite over every partition of every n up to --nmax");
  sweep->add_option("--nmax", nmax, "Largest matrix size, at most 6")->required();
  sweep->add_option("--seed", seed, "Seed for the randomized conjugation checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    kempf::JobSpec job;
    if (optimize->parsed()) job.command = "optimize";
    if (nilpotent->parsed()) job.command = "nilpotent";
    if (transfer->parsed()) job.command = "transfer-check";
    if (oracle->parsed()) job.command = "oracle";
    if (sweep->parsed()) job.command = "sweep";

    if (!group_tag.empty()) job.group = kempf::parse_group_tag(group_tag);
    if (!weights_arg.empty())
      job.weight_rows =
          kempf::weight_rows_from_json(parse_payload(weights_arg, "weights"), "weights");
    if (!matrix_arg.empty())
      job.matrix = kempf::matrix_from_json(parse_payload(matrix_arg, "matrix"), "matrix");
    job.form = parse_form(form_arg);
    job.oracle_bound = oracle->count("--bound") ? bound : default_oracle_bound();
    if (!subgroup_arg.empty()) job.subgroup = subgroup_arg;
    job.nmax = nmax;
    job.seed = seed;

    kempf::JobResult result = kempf::run(job);
    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
  } catch (const kempf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const kempf::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const kempf::LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const kempf::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}
