#include <doctest.h>

#include "helpers.hpp"
#include "kempf/errors.hpp"
#include "kempf/jobs.hpp"

using namespace kempf;
using kempf::testing::mat;
using kempf::testing::thrown_code;

TEST_CASE("parse_group_tag accepts both spellings") {
  CHECK(parse_group_tag("GL:3").tag() == "GL:3");
  CHECK(parse_group_tag("GL(3)").tag() == "GL:3");
  CHECK(parse_group_tag("SL(2)xGL(3)").tag() == "SL:2xGL:3");
  CHECK_THROWS_AS(parse_group_tag("GL(x)"), ParseError);
}

TEST_CASE("parse_subgroup grammar") {
  GroupDescriptor gl4 = parse_group_tag("GL:4");
  CHECK(parse_subgroup("full", gl4).describe() == "full:GL:4");
  CHECK(parse_subgroup("levi:1,2|3,4", gl4).describe() == "levi:1,2|3,4 in GL:4");
  CHECK(parse_subgroup("centralizer:diag(1,1,-1,-1)", gl4).blocks ==
        std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  GroupDescriptor prod = parse_group_tag("GL:2xGL:2");
  CHECK(parse_subgroup("diagonal:2", prod).copies == 2);

  CHECK(thrown_code([&] { parse_subgroup("levi:1,2|3,5", gl4); }) == "BadSubgroup");
  CHECK(thrown_code([&] { parse_subgroup("centralizer:diag(1,1)", gl4); }) ==
        "DimensionMismatch");
  CHECK_THROWS_AS(parse_subgroup("pseudo:1", gl4), ParseError);
  CHECK_THROWS_AS(parse_subgroup("centralizer:diag(1,1,a,1)", gl4), ParseError);
  CHECK_THROWS_AS(parse_subgroup("nonsense", gl4), ParseError);
}

TEST_CASE("rational and matrix JSON round trips") {
  CHECK(rat_to_json(make_rat(1, 2)) == "1/2");
  CHECK(rat_to_json(Rat(-3)) == "-3");
  CHECK(rat_from_json(Json(5), "x") == 5);
  CHECK(rat_from_json(Json("2/3"), "x") == make_rat(2, 3));
  CHECK_THROWS_AS(rat_from_json(Json("2/"), "x"), ParseError);
  CHECK_THROWS_AS(rat_from_json(Json(1.5), "x"), ParseError);

  QMat m = mat({{1, 2}, {3, 4}});
  m(0, 0) = make_rat(1, 3);
  QMat back = matrix_from_json(matrix_to_json(m), "m");
  CHECK(back == m);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]"), "m"), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::array(), "m"), ParseError);
}

TEST_CASE("form spec round trips and resolves") {
  FormSpec identity;
  CHECK(identity.to_json()["kind"] == "identity");
  CHECK(FormSpec::from_json(identity.to_json()).kind == FormSpec::Kind::Identity);
  GroupDescriptor gl2 = parse_group_tag("GL:2");
  CHECK(identity.resolve(gl2).matrix == QMat(QMat::Identity(2, 2)));

  FormSpec explicit_form;
  explicit_form.kind = FormSpec::Kind::Matrix;
  explicit_form.matrix = mat({{2, 0}, {0, 2}});
  FormSpec back = FormSpec::from_json(explicit_form.to_json());
  CHECK(back.kind == FormSpec::Kind::Matrix);
  CHECK(back.matrix == explicit_form.matrix);
  CHECK(explicit_form.resolve(gl2).matrix == explicit_form.matrix);

  FormSpec seeded;
  seeded.kind = FormSpec::Kind::Seed;
  seeded.seed = mat({{2, 1}, {1, 3}});
  CHECK(seeded.resolve(gl2).matrix == mat({{5, 2}, {2, 5}}));
  CHECK(FormSpec::from_json(seeded.to_json()).seed == seeded.seed);

  CHECK_THROWS_AS(FormSpec::from_json(Json::parse(R"({"kind":"magic"})")), ParseError);
  CHECK_THROWS_AS(FormSpec::from_json(Json::array()), ParseError);
}

TEST_CASE("optimize job") {
  JobSpec job;
  job.command = "optimize";
  job.group = parse_group_tag("GL:3");
  job.weight_rows = {{1, -1, 0}, {0, 1, -1}};
  JobResult out = run(job);
  CHECK(out.exit_code == 0);
  CHECK(out.report["command"] == "optimize");
  CHECK(out.report["result"]["primitive_optimal"] == Json::array({1, 0, -1}));
  CHECK(out.report["result"]["optimal_ratio_sq"] == "1/2");
  CHECK(out.report["result"]["alpha_at_primitive"] == "1");

  JobSpec balanced;
  balanced.command = "optimize";
  balanced.group = parse_group_tag("GL:2");
  balanced.weight_rows = {{1, 0}, {-1, 0}};
  JobResult ss = run(balanced);
  CHECK(ss.exit_code == 2);
  CHECK(ss.report["result"]["semistable"] == true);
}

TEST_CASE("nilpotent job") {
  JobSpec job;
  job.command = "nilpotent";
  job.group = parse_group_tag("GL(3)");
  job.matrix = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  JobResult out = run(job);
  CHECK(out.exit_code == 0);
  CHECK(out.report["associated"]["lambda_a"] == Json::array({2, 0, -2}));
  CHECK(out.report["associated"]["component_partitions"][0]["parts"] == Json::array({3}));
  CHECK(out.report["optimal_ray"]["primitive_optimal"] == Json::array({1, 0, -1}));
  CHECK(out.report["optimal_ray"]["scaling_d"] == "2");
  CHECK(out.report["optimal_ray"]["optimal"]["optimal_ratio_sq"] == "1/2");
  CHECK(out.report["centralizer"]["negative_part_dim"] == 0);
  CHECK(out.report["centralizer"]["dim_c_e_lambda"] == 1);
  CHECK(out.report["centralizer"]["dim_re"] == 2);

  JobSpec zero;
  zero.command = "nilpotent";
  zero.group = parse_group_tag("GL:2");
  zero.matrix = QMat(QMat::Zero(2, 2));
  CHECK(thrown_code([&] { run(zero); }) == "ZeroPoint");
}

TEST_CASE("oracle job") {
  JobSpec job;
  job.command = "oracle";
  job.group = parse_group_tag("GL:2");
  job.weight_rows = {{1, -1}};
  job.oracle_bound = 3;
  JobResult out = run(job);
  CHECK(out.exit_code == 0);
  CHECK(out.report["bound"] == 3);
  CHECK(out.report["result"]["max_ratio_sq"] == "2");
  CHECK(out.report["result"]["primitive_argmax"] == Json::array({Json::array({1, -1})}));

  JobSpec balanced;
  balanced.command = "oracle";
  balanced.group = parse_group_tag("GL:2");
  balanced.weight_rows = {{1, 0}, {-1, 0}};
  balanced.oracle_bound = 3;
  JobResult ss = run(balanced);
  CHECK(ss.exit_code == 2);
  CHECK(ss.report["result"]["max_ratio_sq"] == "0");
}

TEST_CASE("transfer-check job") {
  JobSpec job;
  job.command = "transfer-check";
  job.group = parse_group_tag("GL:4");
  QMat e = QMat::Zero(4, 4);
  e(0, 1) = 1;
  e(2, 3) = 1;
  job.matrix = e;
  job.subgroup = "centralizer:diag(1,1,-1,-1)";
  JobResult out = run(job);
  CHECK(out.exit_code == 0);
  CHECK(out.report["subgroup_resolved"] == "centralizer-levi:1,2|3,4 in GL:4");
  CHECK(out.report["optimal_transfer"]["holds"] == true);
  CHECK(out.report["optimal_transfer"]["value_g_sq"] == "1");
  CHECK(out.report["optimal_transfer"]["lambda_h"] == Json::array({1, -1, 1, -1}));
  CHECK(out.report["associated_transfer"]["holds_a"] == true);
  CHECK(out.report["associated_transfer"]["holds_opt"] == true);

  JobSpec levi_job;
  levi_job.command = "transfer-check";
  levi_job.group = parse_group_tag("GL:4");
  QMat single = QMat::Zero(4, 4);
  single(0, 1) = 1;
  levi_job.matrix = single;
  levi_job.subgroup = "levi:1,2|3,4";
  JobResult lr = run(levi_job);
  CHECK(lr.report["optimal_transfer"]["holds"] == true);
  CHECK(lr.report["optimal_transfer"]["lambda_g"] == Json::array({1, -1, 0, 0}));
}

TEST_CASE("missing fields and unknown commands") {
  JobSpec job;
  job.command = "optimize";
  CHECK_THROWS_AS(run(job), ParseError);
  job.command = "destabilize";
  CHECK_THROWS_AS(run(job), ParseError);
  CHECK_THROWS_AS(spec_from_report(Json::array()), ParseError);
  CHECK_THROWS_AS(spec_from_report(Json::parse(R"({"command":"optimize"})")), ParseError);
}

TEST_CASE("sweep counts and verdicts") {
  Json report = sweep(3, 42);
  CHECK(report["total"] == 6);  // partitions of 1, 2, 3
  CHECK(report["failed"] == 0);
  CHECK(report["all_pass"] == true);
  CHECK(report["cases"].size() == 6);
  for (const auto& one : report["cases"]) {
    CHECK(one["pass"] == true);
    CHECK(one["properties"].contains("associated"));
    CHECK(one["properties"].contains("centralizer"));
    CHECK(one["properties"].contains("transfer"));
  }
  // The regular case in rank 3 sits at ratio² = 1/2 with content 2.
  const Json& regular = report["cases"][3];
  CHECK(regular["partition"] == Json::array({3}));
  CHECK(regular["properties"]["optimal_ray"]["ratio_sq"] == "1/2");
  CHECK(regular["properties"]["optimal_ray"]["scaling_d"] == "2");

  Json empty = sweep(0, 1);
  CHECK(empty["total"] == 0);
  CHECK(empty["all_pass"] == true);

  CHECK(thrown_code([] { sweep(-1, 1); }) == "BadBound");
  CHECK_THROWS_AS(sweep(7, 1), LimitExceeded);
}

TEST_CASE("reports are byte-deterministic") {
  JobSpec job;
  job.command = "transfer-check";
  job.group = parse_group_tag("GL:4");
  QMat e = QMat::Zero(4, 4);
  e(0, 1) = 1;
  e(2, 3) = 1;
  job.matrix = e;
  job.subgroup = "centralizer:diag(1,1,-1,-1)";
  CHECK(run(job).report.dump() == run(job).report.dump());
  CHECK(sweep(3, 42).dump() == sweep(3, 42).dump());
  CHECK(sweep(2, 9).dump() != sweep(2, 10).dump());  // seed is part of the report
}

TEST_CASE("report embeds a re-runnable spec") {
  std::vector<JobSpec> jobs;
  {
    JobSpec j;
    j.command = "optimize";
    j.group = parse_group_tag("SL:3");
    j.weight_rows = {{1, 0, 0}};
    jobs.push_back(j);
  }
  {
    JobSpec j;
    j.command = "oracle";
    j.group = parse_group_tag("GL:2");
    j.weight_rows = {{1, -1}, {2, 0}};
    j.oracle_bound = 4;
    j.form.kind = FormSpec::Kind::Matrix;
    j.form.matrix = mat({{2, 0}, {0, 2}});
    jobs.push_back(j);
  }
  {
    JobSpec j;
    j.command = "nilpotent";
    j.group = parse_group_tag("GL:3");
    j.matrix = mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
    jobs.push_back(j);
  }
  {
    JobSpec j;
    j.command = "transfer-check";
    j.group = parse_group_tag("GL:4");
    QMat e = QMat::Zero(4, 4);
    e(0, 1) = 1;
    e(2, 3) = 1;
    j.matrix = e;
    j.subgroup = "levi:1,2|3,4";
    jobs.push_back(j);
  }
  {
    JobSpec j;
    j.command = "sweep";
    j.nmax = 2;
    j.seed = 7;
    jobs.push_back(j);
  }
  for (const JobSpec& job : jobs) {
    JobResult first = run(job);
    JobResult again = run(spec_from_report(first.report));
    CHECK(first.report.dump() == again.report.dump());
    CHECK(first.exit_code == again.exit_code);
  }
}
