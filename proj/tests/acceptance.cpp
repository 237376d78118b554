// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <set>
#include <string>

#include "hypred/atlas.hpp"
#include "hypred/invariant_suite.hpp"
#include "hypred/raw_input.hpp"
#include "hypred/report.hpp"
#include "hypred/serialize.hpp"

using namespace hypred;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::size_t kRandomConfigs = 1000;
constexpr std::size_t kOracleConfigs = 500;
constexpr std::size_t kInvarianceConfigs = 200;
constexpr double kAtlasSeconds = 1.0;
constexpr double kRandomSeconds = 30.0;
constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << what << " (" << detail << ")\n";
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(HYPRED_TEST_DATA_DIR) + "/" + name, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

}  // namespace

int main() {
  {
    const auto start = Clock::now();
    const auto g1 = enumerate_types(1).size();
    const auto g2 = enumerate_types(2).size();
    const double t = seconds_since(start);
    report(1, g1 == 2 && g2 == 7 && t < kAtlasSeconds, "atlas counts",
           "g=1: " + std::to_string(g1) + ", g=2: " + std::to_string(g2) + ", " + fmt_seconds(t));
  }

  // Criteria 2-6, 9, 10 share one batch of random configurations.
  std::size_t genus_ok = 0, rank_ok = 0, gauss_ok = 0, locus_ok = 0, oracle_ok = 0, ext_ok = 0, conn_ok = 0;
  std::set<int> genera;
  std::set<std::int64_t> primes;
  std::vector<std::string> samples;
  const auto start = Clock::now();
  ConfigGenerator gen(kSeed);
  for (std::size_t k = 0; k < kRandomConfigs; ++k) {
    const RawInput input = gen.next();
    genera.insert(static_cast<int>(branch_points(input).size() / 2) - 1);
    primes.insert(input.p);
    const auto c = check_instance(input);
    const bool pipeline_ok = c.failures.empty() || c.failures.front().rfind("pipeline", 0) != 0;
    genus_ok += pipeline_ok && c.genus_conservation;
    rank_ok += pipeline_ok && c.rank_identity;
    gauss_ok += pipeline_ok && c.gauss_oracle;
    locus_ok += pipeline_ok && c.branch_locus;
    oracle_ok += pipeline_ok && c.tree_oracle;
    ext_ok += pipeline_ok && c.extension_sufficient;
    conn_ok += pipeline_ok && c.connected_sides;
    if (!c.ok() && samples.size() < 5) samples.push_back(input_to_json(input) + ": " + c.failures.front());
  }
  const double batch = seconds_since(start);
  const std::string n = std::to_string(kRandomConfigs);
  const std::string timing = fmt_seconds(batch);
  const bool fast = batch < kRandomSeconds;
  report(2, genus_ok == kRandomConfigs && fast && genera.size() == 4, "genus conservation",
         std::to_string(genus_ok) + "/" + n + ", genera " + std::to_string(genera.size()) + "/4, " +
             std::to_string(primes.size()) + " primes, " + timing);
  report(3, rank_ok == kRandomConfigs, "rank identity n0 - m0 = Betti", std::to_string(rank_ok) + "/" + n);
  report(4, gauss_ok == kRandomConfigs, "Gauss valuation oracle", std::to_string(gauss_ok) + "/" + n);
  report(5, locus_ok == kRandomConfigs, "branch locus = T residues", std::to_string(locus_ok) + "/" + n);
  report(6, oracle_ok == kRandomConfigs && kRandomConfigs >= kOracleConfigs, "stabilize = naive tree oracle",
         std::to_string(oracle_ok) + "/" + n);

  {
    std::mt19937_64 rng(kSeed + 1);
    ConfigGenerator inv_gen(kSeed + 2);
    std::size_t ok = 0;
    std::size_t total = 0;
    std::string first_failure;
    for (std::size_t k = 0; k < kInvarianceConfigs; ++k) {
      const RawInput input = inv_gen.next();
      for (auto t : kAllTransforms) {
        ++total;
        const std::string msg = check_invariance(input, t, rng);
        if (msg.empty()) {
          ++ok;
        } else if (first_failure.empty()) {
          first_failure = msg;
        }
      }
    }
    report(7, ok == total, "invariance under relabeling, x+b, u*x, 1/(x-a), c -> l^2 c",
           std::to_string(ok) + "/" + std::to_string(total) + " transformed reports, " +
               std::to_string(kInvarianceConfigs) + " configs per transform" +
               (first_failure.empty() ? "" : "; " + first_failure));
  }

  {
    bool ok = true;
    std::string detail;
    auto note = [&](bool cond, const std::string& what) {
      if (!cond) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + what;
      }
    };
    try {
      const auto f1 = analyze(parse_input(slurp("fixtures/f1.json")));
      note(f1.flags.good_reduction_over_K, "F1 not good over K");
      note(f1.fiber.components.size() == 1 && f1.fiber.components[0].genus == 1, "F1 fiber");

      const auto f2 = analyze(parse_input(slurp("fixtures/f2.json")));
      bool f2_cycle = f2.decision.e == 1 && f2.fiber.components.size() == 2 && f2.fiber.edges.size() == 2 &&
                      f2.jacobian.toric_rank == 1;
      for (const auto& e : f2.fiber.edges) f2_cycle = f2_cycle && e.thickness == 2;
      for (const auto& c : f2.fiber.components) f2_cycle = f2_cycle && c.genus == 0;
      note(f2_cycle, "F2 fiber");

      const auto f3 = analyze(parse_input(slurp("fixtures/f3.txt")));
      const bool f3_ok = f3.decision.e == 2 && f3.fiber.components.size() == 2 && f3.fiber.edges.size() == 1 &&
                         f3.fiber.components[0].genus == 1 && f3.fiber.components[1].genus == 1 &&
                         f3.fiber.edges[0].thickness == 2 && f3.jacobian.toric_rank == 0;
      note(f3_ok, "F3 fiber");
      const OddPrime five(5);
      const FpPoly expected = FpPoly::constant(five, 4) * FpPoly::linear(five, 0) * FpPoly::linear(five, 1) *
                              FpPoly::linear(five, 2);
      note(f3.equation_of_component(f3.fiber.lifted_marks[0]) == expected, "F3 equation");

      const auto f4 = analyze(parse_input(slurp("fixtures/f4.json")));
      bool f4_ok = f4.decision.e == 2 && !f4.fiber.edges.empty();
      for (const auto& e : f4.fiber.edges) f4_ok = f4_ok && e.thickness == 4;
      note(f4_ok, "F4 thicknesses");

      const std::pair<const char*, const char*> goldens[] = {{"fixtures/f1.json", "golden/f1.json"},
                                                             {"fixtures/f2.json", "golden/f2.json"},
                                                             {"fixtures/f3.txt", "golden/f3.json"},
                                                             {"fixtures/f4.json", "golden/f4.json"}};
      for (const auto& [fixture, golden] : goldens) {
        note(emit_json(analyze(parse_input(slurp(fixture)))) == slurp(golden), std::string(golden) + " differs");
      }
    } catch (const std::exception& e) {
      note(false, e.what());
    }
    report(8, ok, "fixtures F1-F4 and byte-exact JSON", ok ? "4/4 fixtures, 4/4 goldens" : detail);
  }

  report(9, ext_ok == kRandomConfigs, "extension sufficiency", std::to_string(ext_ok) + "/" + n);
  report(10, conn_ok == kRandomConfigs, "side preimages connected", std::to_string(conn_ok) + "/" + n);

  for (const auto& s : samples) std::cout << "  failing instance: " << s << "\n";
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
