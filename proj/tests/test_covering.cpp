// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>

#include "doctest.h"
#include "hypred/covering.hpp"
#include "hypred/error.hpp"
#include "hypred/invariant_suite.hpp"
#include "hypred/report.hpp"
#include "test_support.hpp"

using namespace hypred;
using hypred::testing::config_of;
using hypred::testing::input_of;

namespace {

struct Built {
  BranchConfig config;
  MarkedTree tree;
  std::vector<EdgeClass> classes;
  ExtensionDecision decision;
  SpecialFiberGraph fiber;
};

Built build(const BranchConfig& cfg) {
  Built b{cfg, build_marked_tree(cfg), {}, {}, {}};
  b.classes = classify_edges(b.tree, cfg);
  b.decision = decide_extension(cfg, b.tree);
  b.fiber = build_special_fiber(b.tree, b.classes, b.decision, cfg);
  return b;
}

std::size_t vertex_with_mark(const MarkedTree& t, std::size_t mark) { return t.vertex_of_mark(mark); }

}  // namespace

TEST_CASE("vertex_f_valuation examples") {
  auto cfg = config_of({0, 5, 1, 6}, 1, 5);
  auto t = build_marked_tree(cfg);
  CHECK(vertex_f_valuation(cfg, t.vertices[vertex_with_mark(t, 0)]) == 2);

  cfg = config_of({0, 5, 10, 1, 6, 11}, 1, 5);
  t = build_marked_tree(cfg);
  CHECK(vertex_f_valuation(cfg, t.vertices[vertex_with_mark(t, 0)]) == 3);

  cfg = config_of({0, 1, 2, 3}, 1, 7);
  t = build_marked_tree(cfg);
  CHECK(vertex_f_valuation(cfg, t.vertices[0]) == 0);
}

TEST_CASE("decide_extension examples") {
  auto cfg = config_of({0, 5, 1, 6}, 1, 5);
  auto d = decide_extension(cfg, build_marked_tree(cfg));
  CHECK(d.parities == std::vector<int>{0, 0});
  CHECK(d.valuations == std::vector<std::int64_t>{2, 2});
  CHECK(d.e == 1);

  cfg = config_of({0, 5, 10, 1, 6, 11}, 1, 5);
  d = decide_extension(cfg, build_marked_tree(cfg));
  CHECK(d.parities == std::vector<int>{1, 1});
  CHECK(d.valuations == std::vector<std::int64_t>{3, 3});
  CHECK(d.e == 2);

  cfg = config_of({0, 5, 1, 6}, 5, 5);
  d = decide_extension(cfg, build_marked_tree(cfg));
  CHECK(d.parities == std::vector<int>{1, 1});
  CHECK(d.e == 2);
}

TEST_CASE("special fiber examples") {
  auto b = build(config_of({0, 5, 1, 6}, 1, 5));
  REQUIRE(b.fiber.components.size() == 2);
  REQUIRE(b.fiber.edges.size() == 2);
  for (const auto& c : b.fiber.components) CHECK(c.genus == 0);
  for (const auto& e : b.fiber.edges) {
    CHECK(e.thickness == 2);
    CHECK(e.a != e.b);
  }
  CHECK(b.fiber.betti_number() == 1);

  b = build(config_of({0, 5, 10, 1, 6, 11}, 1, 5));
  REQUIRE(b.fiber.components.size() == 2);
  REQUIRE(b.fiber.edges.size() == 1);
  CHECK(b.fiber.components[0].genus == 1);
  CHECK(b.fiber.components[1].genus == 1);
  CHECK(b.fiber.edges[0].thickness == 2);

  b = build(config_of({0, 1, 2, 3}, 1, 7));
  REQUIRE(b.fiber.components.size() == 1);
  CHECK(b.fiber.components[0].genus == 1);
  CHECK(b.fiber.edges.empty());

  b = build(config_of({0, 5, 1, 6}, 5, 5));
  for (const auto& e : b.fiber.edges) CHECK(e.thickness == 4);
}

TEST_CASE("sheet pairs appear over vertices with empty T") {
  // Three clusters of two hanging off a vertex without marks.
  auto b = build(config_of({0, 25, 1, 26, 2, 27}, 1, 5));
  REQUIRE(b.tree.vertices.size() == 4);
  std::size_t pairs = 0;
  for (const auto& v : b.tree.vertices) {
    if (b.fiber.components_over(v.id).size() == 2) ++pairs;
  }
  CHECK(pairs == 1);
  CHECK(b.fiber.components.size() == 5);
  CHECK(b.fiber.edges.size() == 6);
  CHECK(b.fiber.betti_number() == 2);
  CHECK(b.fiber.genus_sum() == 0);
  const auto j = jacobian_report(b.fiber, b.tree, b.classes);
  CHECK(j.n0 == 3);
  CHECK(j.m0 == 1);
  CHECK(j.toric_rank == 2);
}

TEST_CASE("component_equation examples") {
  auto b = build(config_of({0, 5, 1, 6}, 1, 5));
  const OddPrime five(5);
  CHECK(component_equation(b.config, b.tree, b.decision, vertex_with_mark(b.tree, 0)) == FpPoly(five, {0, 4, 1}));

  b = build(config_of({0, 5, 10, 1, 6, 11}, 1, 5));
  const FpPoly eq = component_equation(b.config, b.tree, b.decision, vertex_with_mark(b.tree, 0));
  CHECK(eq == FpPoly::constant(five, 4) * FpPoly::linear(five, 0) * FpPoly::linear(five, 1) * FpPoly::linear(five, 2));
  CHECK(branch_locus(eq) == std::vector<P1Residue>{0, 1, 2, std::nullopt});

  b = build(config_of({0, 1, 2, 3}, 1, 7));
  const OddPrime seven(7);
  CHECK(component_equation(b.config, b.tree, b.decision, 0) ==
        FpPoly::linear(seven, 0) * FpPoly::linear(seven, 1) * FpPoly::linear(seven, 2) * FpPoly::linear(seven, 3));
}

TEST_CASE("split_or_inert examples") {
  const OddPrime p(5);
  FiberComponent empty;
  empty.sheet = Sheet::Plus;
  const FpPoly sq = FpPoly::linear(p, 1) * FpPoly::linear(p, 1);
  CHECK(split_or_inert(sq.scaled(4), empty) == SplitKind::Split);
  CHECK(split_or_inert(sq.scaled(2), empty) == SplitKind::Inert);
  FiberComponent marked;
  marked.t_marks = {0, 1};
  CHECK(split_or_inert(FpPoly(p, {0, 4, 1}), marked) == SplitKind::NotApplicable);
  try {
    split_or_inert(FpPoly(p, {0, 4, 1}), empty);
    FAIL("non-square accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTwoLineComponent);
  }
}

TEST_CASE("jacobian_report examples") {
  auto b = build(config_of({0, 5, 1, 6}, 1, 5));
  auto j = jacobian_report(b.fiber, b.tree, b.classes);
  CHECK(j.n0 == 1);
  CHECK(j.m0 == 0);
  CHECK(j.toric_rank == 1);
  CHECK(j.abelian_rank == 0);
  CHECK_FALSE(j.potential_good);

  b = build(config_of({0, 5, 10, 1, 6, 11}, 1, 5));
  j = jacobian_report(b.fiber, b.tree, b.classes);
  CHECK(j.n0 == 0);
  CHECK(j.m0 == 0);
  CHECK(j.toric_rank == 0);
  CHECK(j.abelian_rank == 2);
  CHECK(j.potential_good);

  b = build(config_of({0, 1, 2, 3}, 1, 7));
  j = jacobian_report(b.fiber, b.tree, b.classes);
  CHECK(j.toric_rank == 0);
  CHECK(j.abelian_rank == 1);
}

TEST_CASE("analyze flags") {
  auto r = analyze(input_of({0, 1, 2, 3}, 1, 7));
  CHECK(r.flags.good_reduction_over_K);
  CHECK(r.flags.marked_genus0_good_reduction);
  r = analyze(input_of({0, 1, 2, 3}, 7, 7));
  CHECK_FALSE(r.flags.good_reduction_over_K);
  CHECK(r.flags.good_reduction_after_extension);
  r = analyze(input_of({0, 5, 1, 6}, 1, 5));
  CHECK_FALSE(r.flags.marked_genus0_good_reduction);
  CHECK_FALSE(r.flags.good_reduction_after_extension);
}

TEST_CASE("structural identities on random configs") {
  ConfigGenerator gen(31);
  for (int k = 0; k < 1200; ++k) {
    const auto input = gen.next();
    const auto check = check_instance(input);
    INFO(input_to_json(input));
    for (const auto& f : check.failures) INFO(f);
    CHECK(check.genus_conservation);
    CHECK(check.rank_identity);
    CHECK(check.gauss_oracle);
    CHECK(check.branch_locus);
    CHECK(check.extension_sufficient);
    CHECK(check.connected_sides);
    CHECK(check.gluing_independent);
    CHECK(check.census);
    CHECK(check.ok());
  }
}

TEST_CASE("gluing choices give isomorphic fibers") {
  ConfigGenerator gen(32);
  std::size_t with_pairs = 0;
  for (int k = 0; k < 300; ++k) {
    const auto b = build(to_branch_config(gen.next()));
    const std::string code = fiber_code(b.fiber, b.tree);
    for (bool reverse : {false, true}) {
      for (bool swap : {false, true}) {
        FiberBuildOptions opt;
        opt.reverse_order = reverse;
        opt.swap_pairing = swap;
        CHECK(fiber_code(build_special_fiber(b.tree, b.classes, b.decision, b.config, opt), b.tree) == code);
      }
    }
    if (b.fiber.components.size() > b.tree.vertices.size()) ++with_pairs;
  }
  CHECK(with_pairs > 10);
}

TEST_CASE("reports are invariant under twists and coordinate changes") {
  ConfigGenerator gen(33);
  std::mt19937_64 rng(34);
  for (int k = 0; k < 220; ++k) {
    const auto input = gen.next();
    for (auto t : kAllTransforms) {
      const std::string msg = check_invariance(input, t, rng);
      CHECK_MESSAGE(msg.empty(), msg);
    }
  }
}

TEST_CASE("square twist leaves every field but the echoed input") {
  auto a = analyze(input_of({0, 5, 10, 1, 6, 11}, 1, 5));
  auto b = analyze(input_of({0, 5, 10, 1, 6, 11}, 4, 5));
  CHECK(a.decision.valuations == b.decision.valuations);
  CHECK(a.jacobian.toric_rank == b.jacobian.toric_rank);
  for (std::size_t c = 0; c < a.fiber.components.size(); ++c) {
    CHECK(a.fiber.components[c].genus == b.fiber.components[c].genus);
    CHECK(a.fiber.components[c].split == b.fiber.components[c].split);
  }
}
