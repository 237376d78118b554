// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypred/raw_input.hpp"
#include "hypred/report.hpp"

namespace hypred {

/// Random branch configurations with controlled p-adic clustering: points are
/// short p-adic digit expansions, then scaled by p^s (s in {-1, 0, 1}) and
/// shifted; one point is occasionally moved to infinity.
class ConfigGenerator {
 public:
  explicit ConfigGenerator(std::uint64_t seed) : rng_(seed) {}

  /// Genus in [1, 4] and an odd prime <= 97 unless fixed.
  RawInput next(int genus = 0, std::int64_t prime = 0);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Results of every per-instance check; empty `failures` means all passed.
struct InstanceCheck {
  bool genus_conservation = true;
  bool rank_identity = true;
  bool gauss_oracle = true;
  bool branch_locus = true;
  bool tree_oracle = true;
  bool extension_sufficient = true;
  bool connected_sides = true;
  bool gluing_independent = true;
  bool census = true;
  bool atlas_closure = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Runs the whole pipeline on `input` and checks every structural identity
/// against an independent computation. Never throws: errors become failures.
InstanceCheck check_instance(const RawInput& input);

enum class Transform { Relabel, Translate, Scale, Invert, Twist, NonsquareTwist };
const char* transform_name(Transform t);
inline constexpr Transform kAllTransforms[] = {Transform::Relabel, Transform::Translate, Transform::Scale,
                                               Transform::Invert,  Transform::Twist,     Transform::NonsquareTwist};

struct TransformedInput {
  RawInput input;
  /// New index k carries the point that had index permutation[k].
  std::vector<std::size_t> permutation;
};

/// Applies a random coordinate change or twist that yields an isomorphic curve
/// (a quadratic twist for NonsquareTwist).
TransformedInput apply_transform(const RawInput& input, Transform t, std::mt19937_64& rng);

/// Label-independent summary of a report. `permutation` maps current mark
/// indices back to the labels of the untransformed input. With
/// `include_arithmetic` false, only the tree and fiber graph are coded.
std::string report_code(const ReductionReport& report, const std::vector<std::size_t>& permutation,
                        bool include_arithmetic = true);

/// Empty on success, else a description of the mismatch.
std::string check_invariance(const RawInput& input, Transform t, std::mt19937_64& rng);

}  // namespace hypred
