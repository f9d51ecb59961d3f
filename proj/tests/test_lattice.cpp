#include <doctest.h>

#include "helpers.hpp"
#include "kempf/errors.hpp"
#include "kempf/lattice.hpp"

using namespace kempf;
using kempf::testing::mat;
using kempf::testing::thrown_code;

namespace {
const GroupDescriptor GL2 = GroupDescriptor::general_linear(2);
const GroupDescriptor GL3 = GroupDescriptor::general_linear(3);
const GroupDescriptor SL2 = GroupDescriptor::special_linear(2);
}  // namespace

TEST_CASE("group descriptor parsing and structure") {
  CHECK(GroupDescriptor::parse("GL:3").tag() == "GL:3");
  CHECK(GroupDescriptor::parse("SL:2xGL:2").tag() == "SL:2xGL:2");
  CHECK(GroupDescriptor::parse("SL:2xGL:2").rank() == 4);
  CHECK(GroupDescriptor::parse("SL:2xGL:2").blocks() ==
        std::vector<std::pair<int, int>>{{0, 2}, {2, 4}});
  CHECK(GL3.component_of(2) == 0);
  CHECK(GroupDescriptor::parse("GL:1xGL:3").component_of(1) == 1);
  CHECK(SL2.has_special_factor());
  CHECK_FALSE(GL3.has_special_factor());
  CHECK_THROWS_AS(GroupDescriptor::parse("GL:0"), ParseError);
  CHECK_THROWS_AS(GroupDescriptor::parse("XX:2"), ParseError);
}

TEST_CASE("cocharacter invariants") {
  CHECK_NOTHROW(TorusCocharacter({1, -1}, SL2));
  CHECK(thrown_code([] { TorusCocharacter({1, 0}, SL2); }) == "NotInLattice");
  CHECK(thrown_code([] { TorusCocharacter({1, 0}, GL3); }) == "DimensionMismatch");
  CHECK(TorusCocharacter({0, 0, 0}, GL3).is_zero());
}

TEST_CASE("primitive_part examples") {
  auto [p1, d1] = primitive_part(TorusCocharacter({2, 0, -2}, GL3));
  CHECK(p1.weights == std::vector<Coord>{1, 0, -1});
  CHECK(d1 == 2);

  auto [p2, d2] = primitive_part(TorusCocharacter({1, -1}, GL2));
  CHECK(p2.weights == std::vector<Coord>{1, -1});
  CHECK(d2 == 1);

  CHECK(thrown_code([] { primitive_part(TorusCocharacter({0, 0, 0}, GL3)); }) ==
        "ZeroCocharacter");
}

TEST_CASE("primitive_part is stable under scaling") {
  TorusCocharacter base({6, -2, 4}, GL3);
  auto [p, d] = primitive_part(base);
  CHECK(d == 2);
  for (Coord n = 1; n <= 4; ++n) {
    std::vector<Coord> scaled;
    for (Coord w : base.weights) scaled.push_back(n * w);
    auto [pn, dn] = primitive_part(TorusCocharacter(scaled, GL3));
    CHECK(pn.weights == p.weights);
    CHECK(dn == Int(n) * d);
  }
}

TEST_CASE("pairing examples") {
  CHECK(pairing(Weight({1, -1, 0}), TorusCocharacter({2, 0, -2}, GL3)) == 2);
  CHECK(pairing(Weight({0, 1, -1}), TorusCocharacter({1, 0, -1}, GL3)) == 1);
  CHECK(pairing(Weight({1, -1}), TorusCocharacter({1, 1}, GL2)) == 0);
  CHECK(thrown_code([] {
          pairing(Weight({1, -1}), TorusCocharacter({1, 0, -1}, GL3));
        }) == "DimensionMismatch");
}

TEST_CASE("squared_length examples") {
  LengthForm i3 = LengthForm::identity(GL3);
  CHECK(squared_length(i3, TorusCocharacter({1, 0, -1}, GL3)) == 2);
  LengthForm i2 = LengthForm::identity(GL2);
  CHECK(squared_length(i2, TorusCocharacter({1, -1}, GL2)) == 2);
  LengthForm b(mat({{5, 2}, {2, 5}}), GL2);
  CHECK(squared_length(b, TorusCocharacter({1, -1}, GL2)) == 6);
  CHECK(thrown_code([&] { squared_length(i2, TorusCocharacter({0, 0}, GL2)); }) ==
        "ZeroCocharacter");
}

TEST_CASE("squared_length scales quadratically") {
  LengthForm b(mat({{5, 2}, {2, 5}}), GL2);
  TorusCocharacter lambda({3, -1}, GL2);
  Rat q = squared_length(b, lambda);
  for (long n = 1; n <= 5; ++n) {
    TorusCocharacter scaled({3 * n, -n}, GL2);
    CHECK(squared_length(b, scaled) == Rat(n * n) * q);
  }
}

TEST_CASE("weyl_invariant_form examples") {
  CHECK(weyl_invariant_form(mat({{1, 0}, {0, 1}}), GL2).matrix == mat({{2, 0}, {0, 2}}));
  CHECK(weyl_invariant_form(mat({{2, 1}, {1, 3}}), GL2).matrix == mat({{5, 2}, {2, 5}}));
  CHECK(weyl_invariant_form(mat({{1, 0}, {0, 2}}), GL2).matrix == mat({{3, 0}, {0, 3}}));
  CHECK(thrown_code([] { weyl_invariant_form(mat({{1, 2}, {2, 1}}), GL2); }) ==
        "NotPositiveDefinite");
  CHECK(thrown_code([] { weyl_invariant_form(mat({{1, 1}, {0, 1}}), GL2); }) ==
        "NotSymmetric");
}

TEST_CASE("weyl_invariant_form output is invariant under every block swap") {
  GroupDescriptor g = GroupDescriptor::parse("GL:3xGL:2");
  QMat seed = QMat::Identity(5, 5);
  seed(0, 1) = seed(1, 0) = 1;
  seed(0, 0) = 3;
  seed(3, 3) = 2;
  LengthForm b = weyl_invariant_form(seed, g);
  auto swap_perm = [&](int i, int j) {
    QMat p = QMat::Identity(5, 5);
    p(i, i) = p(j, j) = 0;
    p(i, j) = p(j, i) = 1;
    return p;
  };
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {3, 4}}) {
    QMat p = swap_perm(i, j);
    CHECK(QMat(p.transpose() * b.matrix * p) == b.matrix);
  }
  // but not necessarily under swaps crossing the component boundary
  QMat crossing = swap_perm(2, 3);
  CHECK(QMat(crossing.transpose() * b.matrix * crossing) != b.matrix);
}

TEST_CASE("LengthForm constructor validates") {
  CHECK(thrown_code([] { LengthForm(mat({{2, 1}, {1, 3}}), GL2); }) == "NotWeylInvariant");
  CHECK(thrown_code([] {
          QMat half(1, 1);
          half(0, 0) = Rat(1, 2);
          LengthForm(half, GroupDescriptor::general_linear(1));
        }) == "NotIntegerForm");
}

TEST_CASE("compare_ratios examples and scale invariance") {
  CHECK(compare_ratios(2, 2, 1, 2) == std::strong_ordering::greater);
  CHECK(compare_ratios(2, 8, 1, 2) == std::strong_ordering::equal);
  CHECK(compare_ratios(0, 1, 1, 1) == std::strong_ordering::less);
  for (long n = 1; n <= 4; ++n) {
    CHECK(compare_ratios(2 * n, Rat(2 * n * n), 1, 2) == std::strong_ordering::greater);
    CHECK(compare_ratios(2 * n, Rat(8 * n * n), 1, 2) == std::strong_ordering::equal);
  }
}
