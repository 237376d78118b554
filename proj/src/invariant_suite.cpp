// SPDX-License-Identifier: Apache-2.0
#include "hypred/invariant_suite.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "hypred/atlas.hpp"
#include "hypred/error.hpp"
#include "hypred/tree_oracle.hpp"

namespace hypred {

namespace {

constexpr std::array<std::int64_t, 24> kPrimes = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double probability) {
  return std::bernoulli_distribution(probability)(rng);
}

// A nonzero integer coprime to p, in [-bound, bound].
std::int64_t random_unit(std::mt19937_64& rng, std::int64_t p, std::int64_t bound) {
  for (;;) {
    const std::int64_t u = uniform(rng, -bound, bound);
    if (u != 0 && u % p != 0) return u;
  }
}

Rational random_unit_rational(std::mt19937_64& rng, std::int64_t p) {
  const Rational u(random_unit(rng, p, 12));
  return chance(rng, 0.3) ? u / Rational(std::abs(random_unit(rng, p, 12))) : u;
}

const std::set<std::string>& atlas_codes(int g) {
  static std::mutex mutex;
  static std::array<std::optional<std::set<std::string>>, 8> cache;
  static const std::set<std::string> none;
  if (g < 1 || g >= static_cast<int>(cache.size())) return none;
  std::lock_guard lock(mutex);
  if (!cache[g]) {
    std::set<std::string> codes;
    for (const auto& t : enumerate_types(g)) codes.insert(canonical_code(t));
    cache[g] = std::move(codes);
  }
  return *cache[g];
}

std::string residues_text(const std::vector<P1Residue>& rs) {
  std::string s = "{";
  for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? "," : "") + (rs[i] ? std::to_string(*rs[i]) : "inf");
  return s + "}";
}

// Renames marks: mark k becomes label[k].
MarkedTree rename_marks(MarkedTree tree, const std::vector<std::size_t>& label) {
  for (auto& v : tree.vertices) {
    for (auto& m : v.marks) m = label.at(m);
    std::sort(v.marks.begin(), v.marks.end());
  }
  return tree;
}

SpecialFiberGraph rename_marks(SpecialFiberGraph fiber, const std::vector<std::size_t>& label) {
  std::vector<std::size_t> lifted(fiber.lifted_marks.size());
  for (std::size_t k = 0; k < label.size(); ++k) lifted.at(label[k]) = fiber.lifted_marks.at(k);
  fiber.lifted_marks = std::move(lifted);
  for (auto& c : fiber.components) {
    for (auto& m : c.t_marks) m = label.at(m);
    std::sort(c.t_marks.begin(), c.t_marks.end());
  }
  return fiber;
}

}  // namespace

RawInput ConfigGenerator::next(int genus, std::int64_t prime) {
  const std::int64_t p = prime != 0 ? prime : kPrimes[uniform(rng_, 0, kPrimes.size() - 1)];
  const int g = genus != 0 ? genus : static_cast<int>(uniform(rng_, 1, 4));
  const std::size_t n = static_cast<std::size_t>(2 * g + 2);

  // Digit expansions with few digits collide often, which yields deep clusters.
  const int length = static_cast<int>(uniform(rng_, 1, 3));
  const std::int64_t digit_bound = std::min<std::int64_t>(p - 1, uniform(rng_, 1, 3));
  std::set<Rational> seen;
  std::vector<Rational> points;
  while (points.size() < n) {
    Rational x;
    if (chance(rng_, 0.15)) {
      x = Rational(uniform(rng_, -60, 60));
    } else {
      Rational pk(1);
      for (int k = 0; k < length; ++k) {
        x += pk * Rational(uniform(rng_, 0, digit_bound));
        pk *= Rational(p);
      }
      if (chance(rng_, 0.1)) x += pk * Rational(random_unit(rng_, p, 5));
    }
    if (seen.insert(x).second) points.push_back(x);
  }
  const long s = static_cast<long>(uniform(rng_, -1, 1));
  Rational shift(uniform(rng_, -20, 20));
  if (chance(rng_, 0.2)) shift /= Rational(std::abs(random_unit(rng_, p, 7)));

  RawInput in;
  in.p = p;
  in.roots.emplace();
  for (const auto& x : points) in.roots->push_back(x * pow(Rational(p), s) + shift);
  if (chance(rng_, 0.15)) (*in.roots)[uniform(rng_, 0, static_cast<std::int64_t>(n) - 1)] = std::nullopt;
  in.c = random_unit_rational(rng_, p) * pow(Rational(p), static_cast<long>(uniform(rng_, -1, 2)));
  return in;
}

InstanceCheck check_instance(const RawInput& input) {
  InstanceCheck out;
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    out.failures.push_back(msg);
  };
  try {
    const BranchConfig config = to_branch_config(input);
    const MarkedTree tree = build_marked_tree(config);

    try {
      const MarkedTree naive = naive_tree_oracle(config);
      if (labeled_tree_code(naive) != labeled_tree_code(tree)) {
        fail(out.tree_oracle, "tree oracle: " + labeled_tree_code(naive) + " vs " + labeled_tree_code(tree));
      }
    } catch (const Error& e) {
      fail(out.tree_oracle, std::string("tree oracle threw: ") + e.what());
    }

    const auto classes = classify_edges(tree, config);
    const auto decision = decide_extension(config, tree);
    const RatPoly f = config.polynomial();
    for (const auto& v : tree.vertices) {
      const ValInt gauss = gauss_valuation(substitute_affine(f, v.cluster.center, v.cluster.depth, config.p), config.p);
      if (gauss != ValInt(decision.valuations[v.id])) {
        fail(out.gauss_oracle, "gauss oracle at v" + std::to_string(v.id) + ": " + gauss.to_string() + " vs " +
                                   std::to_string(decision.valuations[v.id]));
      }
    }

    std::size_t odd_edges = 0;
    for (const auto& ec : classes) {
      if (ec.parity == Parity::Odd) {
        ++odd_edges;
        if ((decision.e * tree.edges[ec.edge].thickness) % 2 != 0) {
          fail(out.extension_sufficient, "odd edge e" + std::to_string(ec.edge) + " has odd extended thickness");
        }
      }
    }
    if (decision.e != 1 && decision.e != 2) fail(out.extension_sufficient, "e is neither 1 nor 2");

    const auto fiber = build_special_fiber(tree, classes, decision, config);
    for (const auto& fe : fiber.edges) {
      const std::int64_t base = decision.e * tree.edges[fe.base_edge].thickness;
      const std::int64_t expected = fe.parity == Parity::Odd ? base / 2 : base;
      if (fe.thickness <= 0 || fe.thickness != expected) {
        fail(out.extension_sufficient, "fiber edge f" + std::to_string(fe.id) + " has thickness " +
                                           std::to_string(fe.thickness));
      }
    }

    // n0 and m0 straight from the tree; the Betti number from the fiber graph.
    std::int64_t n0 = static_cast<std::int64_t>(classes.size() - odd_edges);
    std::int64_t m0 = 0;
    std::size_t empty_t = 0;
    for (const auto& v : tree.vertices) {
      std::size_t t = v.marks.size();
      for (auto e : tree.incident_edges(v.id)) t += classes[e].parity == Parity::Odd ? 1 : 0;
      if (t == 0) {
        ++m0;
        ++empty_t;
      }
    }
    const std::int64_t betti = fiber.betti_number();
    if (fiber.genus_sum() + betti != config.genus) {
      fail(out.genus_conservation, "genus sum " + std::to_string(fiber.genus_sum()) + " + Betti " +
                                       std::to_string(betti) + " != " + std::to_string(config.genus));
    }
    if (n0 - m0 != betti) {
      fail(out.rank_identity, "n0 - m0 = " + std::to_string(n0 - m0) + " but Betti = " + std::to_string(betti));
    }
    try {
      jacobian_report(fiber, tree, classes);
    } catch (const Error& e) {
      fail(out.rank_identity, std::string("jacobian_report threw: ") + e.what());
    }

    if (fiber.edges.size() != odd_edges + 2 * (classes.size() - odd_edges) ||
        fiber.components.size() != tree.vertices.size() + empty_t) {
      fail(out.census, "fiber census mismatch");
    }

    for (const auto& v : tree.vertices) {
      const FpPoly eq = component_equation(config, tree, decision, v.id);
      const auto locus = branch_locus(eq);
      const auto t = t_residues(tree, config, classes, v.id);
      if (locus != t) {
        fail(out.branch_locus, "branch locus at v" + std::to_string(v.id) + ": " + residues_text(locus) + " vs T " +
                                   residues_text(t));
      }
      const auto yun = odd_multiplicity_roots(eq);
      const auto direct = odd_multiplicity_roots_by_evaluation(eq);
      if (yun.odd_roots != direct.odd_roots || yun.rational_roots != direct.rational_roots) {
        fail(out.branch_locus, "squarefree routes disagree at v" + std::to_string(v.id));
      }
    }

    if (!side_preimages_connected(fiber, tree)) fail(out.connected_sides, "a side preimage is disconnected");

    const std::string code = fiber_code(fiber, tree);
    FiberBuildOptions alt;
    alt.reverse_order = true;
    alt.swap_pairing = true;
    for (const auto& v : tree.vertices) {
      if (!v.marks.empty() && v.id != tree.vertex_of_mark(0)) alt.start_vertex = v.id;
    }
    if (fiber_code(build_special_fiber(tree, classes, decision, config, alt), tree) != code) {
      fail(out.gluing_independent, "gluing choices change the fiber");
    }

    const auto& codes = atlas_codes(config.genus);
    if (!codes.empty() && !codes.count(canonical_code(abstract_tree(tree)))) {
      fail(out.atlas_closure, "tree type missing from the atlas");
    }
  } catch (const Error& e) {
    out.failures.push_back(std::string("pipeline threw: ") + e.what());
  }
  return out;
}

const char* transform_name(Transform t) {
  switch (t) {
    case Transform::Relabel: return "relabel";
    case Transform::Translate: return "translate";
    case Transform::Scale: return "scale";
    case Transform::Invert: return "invert";
    case Transform::Twist: return "square twist";
    case Transform::NonsquareTwist: return "nonsquare twist";
  }
  return "?";
}

TransformedInput apply_transform(const RawInput& input, Transform t, std::mt19937_64& rng) {
  const auto points = branch_points(input);
  TransformedInput out;
  out.input.p = input.p;
  out.input.c = input.c;
  if (input.coeffs) out.input.c *= RatPoly(*input.coeffs).leading();
  out.input.roots.emplace();
  out.permutation.resize(points.size());
  std::iota(out.permutation.begin(), out.permutation.end(), 0);
  auto& roots = *out.input.roots;
  std::size_t finite = 0;
  for (const auto& x : points) finite += x ? 1 : 0;

  switch (t) {
    case Transform::Relabel:
      std::shuffle(out.permutation.begin(), out.permutation.end(), rng);
      for (auto k : out.permutation) roots.push_back(points[k]);
      break;
    case Transform::Translate: {
      Rational b(uniform(rng, -30, 30));
      if (chance(rng, 0.3)) b /= Rational(uniform(rng, 1, 3) == 1 ? input.p : uniform(rng, 1, 9));
      for (const auto& x : points) roots.push_back(x ? RawPoint(*x + b) : std::nullopt);
      break;
    }
    case Transform::Scale: {
      const Rational u = random_unit_rational(rng, input.p);
      for (const auto& x : points) roots.push_back(x ? RawPoint(*x * u) : std::nullopt);
      out.input.c *= pow(u, -static_cast<long>(finite));
      break;
    }
    case Transform::Invert: {
      Rational a(uniform(rng, -8, 8));
      if (chance(rng, 0.2)) a /= Rational(input.p);
      for (const auto& x : points) {
        if (!x) {
          roots.emplace_back(Rational(0));
        } else if (*x == a) {
          roots.emplace_back(std::nullopt);
        } else {
          roots.emplace_back(Rational(1) / (*x - a));
          out.input.c *= a - *x;
        }
      }
      break;
    }
    case Transform::Twist: {
      Rational lambda = random_unit_rational(rng, input.p) * pow(Rational(input.p), static_cast<long>(uniform(rng, -2, 2)));
      roots = points;
      out.input.c *= lambda * lambda;
      break;
    }
    case Transform::NonsquareTwist: {
      std::int64_t u = 2;
      while (legendre(u, OddPrime(input.p)) == 1) ++u;
      roots = points;
      out.input.c *= Rational(u);
      break;
    }
  }
  return out;
}

std::string report_code(const ReductionReport& report, const std::vector<std::size_t>& permutation,
                        bool include_arithmetic) {
  const MarkedTree tree = rename_marks(report.tree, permutation);
  const SpecialFiberGraph fiber = rename_marks(report.fiber, permutation);
  std::ostringstream os;
  os << "tree " << labeled_tree_code(tree) << "\nfiber " << fiber_code(fiber, tree) << "\n";
  if (!include_arithmetic) return os.str();
  os << "e " << report.decision.e << "\n";
  os << "jacobian " << report.jacobian.toric_rank << " " << report.jacobian.abelian_rank << " " << report.jacobian.n0
     << " " << report.jacobian.m0 << " " << report.jacobian.potential_good << "\n";
  os << "flags " << report.flags.marked_genus0_good_reduction << report.flags.good_reduction_over_K
     << report.flags.good_reduction_after_extension << "\n";
  std::vector<std::string> splits;
  for (const auto& c : fiber.components) {
    if (c.sheet == Sheet::Plus) splits.push_back(vertex_key(tree, c.base_vertex) + split_name(c.split));
  }
  std::sort(splits.begin(), splits.end());
  for (const auto& s : splits) os << "split " << s << "\n";
  return os.str();
}

std::string check_invariance(const RawInput& input, Transform t, std::mt19937_64& rng) {
  try {
    const auto base = analyze(input);
    std::vector<std::size_t> identity(base.config.point_count());
    std::iota(identity.begin(), identity.end(), 0);
    const bool arithmetic = t != Transform::NonsquareTwist;
    const std::string expected = report_code(base, identity, arithmetic);

    const auto moved = apply_transform(input, t, rng);
    const auto other = analyze(moved.input);
    const std::string got = report_code(other, moved.permutation, arithmetic);
    if (got != expected) {
      return std::string(transform_name(t)) + " changed the report of " + input_to_json(input) + " -> " +
             input_to_json(moved.input) + "\n  before: " + expected + "  after:  " + got;
    }
    return {};
  } catch (const Error& e) {
    return std::string(transform_name(t)) + " threw on " + input_to_json(input) + ": " + e.what();
  }
}

}  // namespace hypred
