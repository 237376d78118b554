// SPDX-License-Identifier: Apache-2.0
// hypred: reduction types of hyperelliptic curves over Q_p.

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hypred/atlas.hpp"
#include "hypred/error.hpp"
#include "hypred/invariant_suite.hpp"
#include "hypred/raw_input.hpp"
#include "hypred/report.hpp"
#include "hypred/serialize.hpp"

namespace {

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO) != 0; }

void diagnose(const std::string& what) {
  if (use_color()) {
    std::cerr << "\033[1;31mhypred: error:\033[0m " << what << "\n";
  } else {
    std::cerr << "hypred: error: " << what << "\n";
  }
}

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hypred::Error(hypred::ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_sink(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw hypred::Error(hypred::ErrorCode::InvalidArgument, "cannot write '" + path + "'");
}

struct CheckTotals {
  std::vector<std::string> failures;
  std::size_t passed = 0;
};

// Worker w handles cases w, w + jobs, ... with seed + w.
CheckTotals run_check(std::uint64_t seed, std::size_t cases, std::size_t jobs) {
  jobs = std::max<std::size_t>(1, std::min(jobs, std::max<std::size_t>(cases, 1)));
  std::vector<CheckTotals> per_worker(jobs);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < jobs; ++w) {
    threads.emplace_back([&, w] {
      hypred::ConfigGenerator gen(seed + w);
      for (std::size_t k = w; k < cases; k += jobs) {
        const auto input = gen.next();
        std::vector<std::string> failures = hypred::check_instance(input).failures;
        for (auto t : hypred::kAllTransforms) {
          auto msg = hypred::check_invariance(input, t, gen.rng());
          if (!msg.empty()) failures.push_back(std::move(msg));
        }
        if (failures.empty()) {
          ++per_worker[w].passed;
        } else {
          for (auto& f : failures) {
            per_worker[w].failures.push_back("case " + std::to_string(k) + " " + hypred::input_to_json(input) + ": " + f);
          }
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  CheckTotals total;
  for (auto& w : per_worker) {
    total.passed += w.passed;
    for (auto& f : w.failures) total.failures.push_back(std::move(f));
  }
  return total;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semistable reduction types of hyperelliptic curves y^2 = c * prod (x - xi) over Q_p"};
  app.require_subcommand(1);

  std::string input_path;
  std::string json_out;
  std::string dot_tree_out;
  std::string dot_fiber_out;
  auto* analyze = app.add_subcommand("analyze", "Compute the reduction type of one curve");
  analyze->add_option("input", input_path, "Input file, or - for standard input")->required();
  analyze->add_option("--json", json_out, "Write the JSON report (- for standard output)");
  analyze->add_option("--dot-tree", dot_tree_out, "Write the marked tree as DOT");
  analyze->add_option("--dot-fiber", dot_fiber_out, "Write the special fiber as DOT");

  int genus = 0;
  std::string atlas_json;
  auto* atlas = app.add_subcommand("atlas", "List all reduction types of a genus");
  atlas->add_option("g", genus, "Genus")->required();
  atlas->add_option("--json", atlas_json, "Write the catalog JSON (- for standard output)");

  std::uint64_t seed = 1;
  std::size_t cases = 200;
  std::size_t jobs = 1;
  auto* check = app.add_subcommand("check", "Run the randomized invariant suite");
  check->add_option("--seed", seed, "Base seed");
  check->add_option("--cases", cases, "Number of random curves");
  check->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) {
      const auto report = hypred::analyze(hypred::parse_input(read_source(input_path)));
      const bool any_output = !json_out.empty() || !dot_tree_out.empty() || !dot_fiber_out.empty();
      if (!json_out.empty()) write_sink(json_out, hypred::emit_json(report));
      if (!dot_tree_out.empty()) write_sink(dot_tree_out, hypred::emit_dot(report.tree));
      if (!dot_fiber_out.empty()) write_sink(dot_fiber_out, hypred::emit_dot(report.fiber));
      if (!any_output) std::cout << hypred::summary_text(report);
    } else if (*atlas) {
      const auto types = hypred::enumerate_types(genus);
      const std::string doc = hypred::emit_atlas_json(genus, types);
      if (!atlas_json.empty()) {
        write_sink(atlas_json, doc);
      } else {
        std::cout << "genus " << genus << ": " << types.size() << " types\n";
        for (const auto& t : types) std::cout << "  " << hypred::canonical_code(t) << "\n";
      }
    } else if (*check) {
      const auto totals = run_check(seed, cases, jobs);
      for (const auto& f : totals.failures) std::cerr << f << "\n";
      std::cout << totals.passed << "/" << cases << " ok\n";
      return totals.passed == cases ? 0 : 2;
    }
  } catch (const hypred::Error& e) {
    diagnose(e.what());
    return hypred::is_internal(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    diagnose(e.what());
    return 2;
  }
  return 0;
}
