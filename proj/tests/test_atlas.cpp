// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "doctest.h"
#include "hypred/atlas.hpp"
#include "hypred/error.hpp"
#include "hypred/invariant_suite.hpp"

using namespace hypred;

namespace {

// Second generator: labelled trees from Pruefer sequences, marks by stars and
// bars, isomorphism classes by brute force over vertex permutations.
using Labelled = std::pair<std::vector<int>, std::set<std::pair<std::size_t, std::size_t>>>;

std::vector<std::set<std::pair<std::size_t, std::size_t>>> pruefer_trees(std::size_t k) {
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> out;
  if (k == 1) return {{}};
  if (k == 2) return {{{0, 1}}};
  std::vector<std::size_t> seq(k - 2, 0);
  for (;;) {
    std::vector<std::size_t> degree(k, 1);
    for (auto s : seq) ++degree[s];
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (auto s : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.insert({std::min(leaf, s), std::max(leaf, s)});
      --degree[leaf];
      --degree[s];
    }
    std::vector<std::size_t> last;
    for (std::size_t v = 0; v < k; ++v) {
      if (degree[v] == 1) last.push_back(v);
    }
    edges.insert({last[0], last[1]});
    out.push_back(edges);
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == k) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return out;
}

void compositions(int total, std::size_t parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(total - x, parts, cur, out);
    cur.pop_back();
  }
}

bool isomorphic(const Labelled& a, const Labelled& b) {
  const std::size_t k = a.first.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t v = 0; v < k && ok; ++v) ok = a.first[v] == b.first[perm[v]];
    for (auto it = a.second.begin(); ok && it != a.second.end(); ++it) {
      const auto x = perm[it->first];
      const auto y = perm[it->second];
      ok = b.second.count({std::min(x, y), std::max(x, y)}) > 0;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<Labelled> brute_force_types(int g) {
  const int n = 2 * g + 2;
  std::vector<Labelled> reps;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(n - 2); ++k) {
    std::vector<std::vector<int>> marks;
    std::vector<int> cur;
    compositions(n, k, cur, marks);
    for (const auto& edges : pruefer_trees(k)) {
      std::vector<int> degree(k, 0);
      for (const auto& [a, b] : edges) {
        ++degree[a];
        ++degree[b];
      }
      for (const auto& m : marks) {
        bool stable = true;
        for (std::size_t v = 0; v < k; ++v) stable = stable && degree[v] + m[v] >= 3;
        if (!stable) continue;
        Labelled cand{m, edges};
        auto signature = [&](const Labelled& t) {
          std::vector<std::pair<int, int>> s;
          std::vector<int> deg(t.first.size(), 0);
          for (const auto& [a, b] : t.second) {
            ++deg[a];
            ++deg[b];
          }
          for (std::size_t v = 0; v < t.first.size(); ++v) s.emplace_back(deg[v], t.first[v]);
          std::sort(s.begin(), s.end());
          return s;
        };
        const auto sig = signature(cand);
        bool seen = false;
        for (const auto& r : reps) {
          if (r.first.size() == k && signature(r) == sig && isomorphic(cand, r)) {
            seen = true;
            break;
          }
        }
        if (!seen) reps.push_back(cand);
      }
    }
  }
  return reps;
}

AbstractMarkedTree to_abstract(const Labelled& t) {
  AbstractMarkedTree out;
  out.marks = t.first;
  for (const auto& e : t.second) out.edges.push_back(e);
  return out;
}

// Frozen after both generators agreed.
constexpr std::size_t kTypesGenus3 = 32;

}  // namespace

TEST_CASE("atlas counts for genus 1 and 2") {
  const auto start = std::chrono::steady_clock::now();
  CHECK(enumerate_types(1).size() == 2);
  CHECK(enumerate_types(2).size() == 7);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("genus below one is rejected") {
  try {
    enumerate_types(0);
    FAIL("g = 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenusTooSmall);
  }
}

TEST_CASE("both generators agree up to genus 3") {
  for (int g = 1; g <= 3; ++g) {
    std::set<std::string> ours;
    for (const auto& t : enumerate_types(g)) ours.insert(canonical_code(t));
    std::set<std::string> theirs;
    const auto brute = brute_force_types(g);
    for (const auto& t : brute) theirs.insert(canonical_code(to_abstract(t)));
    CHECK(theirs.size() == brute.size());
    CHECK(ours == theirs);
  }
  CHECK(enumerate_types(3).size() == kTypesGenus3);
}

TEST_CASE("canonical_code examples") {
  AbstractMarkedTree single{{4}, {}};
  CHECK(canonical_code(single) == canonical_code(AbstractMarkedTree{{4}, {}}));
  AbstractMarkedTree a{{2, 2}, {{0, 1}}};
  AbstractMarkedTree b{{2, 2}, {{1, 0}}};
  CHECK(canonical_code(a) == canonical_code(b));
  AbstractMarkedTree c{{3, 3}, {{0, 1}}};
  AbstractMarkedTree d{{2, 4}, {{0, 1}}};
  CHECK(canonical_code(c) != canonical_code(d));
  // The same caterpillar listed in two vertex orders.
  AbstractMarkedTree e{{2, 1, 0, 2, 2}, {{0, 1}, {1, 2}, {2, 3}, {2, 4}}};
  AbstractMarkedTree f{{2, 2, 0, 1, 2}, {{4, 3}, {3, 2}, {2, 0}, {1, 2}}};
  CHECK(canonical_code(e) == canonical_code(f));
}

TEST_CASE("enumeration is independent of generation order") {
  for (int g = 1; g <= 4; ++g) {
    const auto fwd = enumerate_types(g);
    const auto rev = enumerate_types(g, true);
    REQUIRE(fwd.size() == rev.size());
    std::set<std::string> codes;
    for (std::size_t k = 0; k < fwd.size(); ++k) {
      CHECK(fwd[k].marks == rev[k].marks);
      CHECK(fwd[k].edges == rev[k].edges);
      CHECK(is_stable_tree(fwd[k]));
      CHECK(fwd[k].total_marks() == 2 * g + 2);
      codes.insert(canonical_code(fwd[k]));
    }
    CHECK(codes.size() == fwd.size());
    CHECK(std::is_sorted(fwd.begin(), fwd.end(), [](const auto& x, const auto& y) {
      return canonical_code(x) < canonical_code(y);
    }));
  }
}

TEST_CASE("derive_fiber_type examples") {
  auto f = derive_fiber_type(AbstractMarkedTree{{2, 2}, {{0, 1}}});
  CHECK(f.components.size() == 2);
  CHECK(f.components[0].genus == 0);
  CHECK(f.edges[0].multiplicity == 2);
  CHECK(f.toric_rank == 1);

  f = derive_fiber_type(AbstractMarkedTree{{3, 3}, {{0, 1}}});
  CHECK(f.components[0].genus == 1);
  CHECK(f.components[1].genus == 1);
  CHECK(f.edges[0].multiplicity == 1);
  CHECK(f.toric_rank == 0);

  f = derive_fiber_type(AbstractMarkedTree{{4}, {}});
  CHECK(f.components.size() == 1);
  CHECK(f.components[0].genus == 1);
  CHECK(f.toric_rank == 0);
}

TEST_CASE("every type satisfies the rank identities") {
  for (int g = 1; g <= 4; ++g) {
    for (const auto& t : enumerate_types(g)) {
      const auto f = derive_fiber_type(t);
      CHECK(f.abelian_rank + f.betti == g);
      CHECK(f.toric_rank == static_cast<std::int64_t>(f.n0) - static_cast<std::int64_t>(f.m0));
    }
  }
}

TEST_CASE("random curves land in the atlas") {
  std::array<std::set<std::string>, 5> codes;
  for (int g = 1; g <= 4; ++g) {
    for (const auto& t : enumerate_types(g)) codes[g].insert(canonical_code(t));
  }
  ConfigGenerator gen(41);
  for (int k = 0; k < 400; ++k) {
    const auto cfg = to_branch_config(gen.next());
    const auto tree = build_marked_tree(cfg);
    CHECK(codes[cfg.genus].count(canonical_code(abstract_tree(tree))) == 1);
  }
}
