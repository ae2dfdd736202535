#pragma once

// Subset sum as vector factorization: each item k contributes a two-entry
// codebook {z(0), z(S_k)} and the resonator factors z(T) over all items.
// Every reported solution is checked with integer arithmetic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rhc/codebook.hpp"
#include "rhc/residue.hpp"
#include "rhc/resonator.hpp"

namespace rhc {

struct SubsetSumInstance {
  std::vector<std::int64_t> items;
  std::int64_t target = 0;
  std::optional<std::vector<std::size_t>> ground_truth;  // planted subset (item indices)
  std::uint64_t seed = 0;
};

// Items positive, 0 <= T <= sum(S), ground truth (if any) sums to T.
void validate(const SubsetSumInstance& instance);

std::int64_t sum_of(std::span<const std::int64_t> items, std::span<const std::size_t> subset);

// {m-1, m, m+1}, moving m upward until the triple is pairwise co-prime.
std::vector<std::int64_t> consecutive_triple_moduli(std::int64_t m);

// Items uniform on [1, floor(M / (2 * max_set_size))] so that every set of up
// to max_set_size items sums below M/2; each item joins the planted subset
// with probability 1/2. max_set_size defaults to n.
SubsetSumInstance generate_instance(std::size_t n, const ResidueSystem& sys, std::uint64_t seed,
                                    std::size_t max_set_size = 0);

// One {z(0) -> label 0, z(S_k) -> label 1} codebook per item.
std::vector<Codebook> build_factors(std::span<const std::int64_t> items, const ResidueSystem& sys);

struct SubsetSumResult {
  bool success = false;
  std::vector<std::size_t> subset;  // verified to sum to T when success
  int attempts = 0;
  std::uint64_t evaluations = 0;
  std::vector<bool> attempt_success;
};

// Resonator over the item codebooks with input z(T); attempts beyond the
// first restart from fresh random phases.
SubsetSumResult solve(const SubsetSumInstance& instance, const ResidueSystem& sys,
                      const ResonatorConfig& config);

// Exact solver: dynamic programming over reachable sums <= T.
std::optional<std::vector<std::size_t>> exact_baseline(std::span<const std::int64_t> items,
                                                       std::int64_t target);

// Exhaustive 2^|S| enumeration, for cross-checking on tiny instances.
std::optional<std::vector<std::size_t>> enumerate_subsets(std::span<const std::int64_t> items,
                                                          std::int64_t target);

// Instance file: {"items": [...], "target": T, "seed": s} plus optional
// "ground_truth". Result line: {"success", "subset", "restarts_used",
// "evaluations"}.
std::string instance_to_json(const SubsetSumInstance& instance);
SubsetSumInstance instance_from_json(std::string_view text);
std::string result_to_json_line(const SubsetSumResult& result);

struct SubsetSumBenchmarkConfig {
  std::vector<std::size_t> sizes{6, 8, 10};
  std::vector<std::size_t> dims{1024, 2048};
  std::int64_t m = 200;
  int trials = 50;
  ResonatorConfig resonator{};
  std::uint64_t seed = 0;
};

struct SubsetSumBenchmarkRow {
  std::size_t set_size = 0;
  std::size_t dim = 0;
  std::vector<std::int64_t> moduli;
  int trials = 0;
  double first_attempt_accuracy = 0.0;       // p-hat
  double accuracy = 0.0;                     // within the restart budget
  std::vector<double> success_within;        // fraction solved within t attempts, t = 1..
  double mean_evaluations = 0.0;             // over all trials, all attempts
  double expected_evaluations = 0.0;         // mean_evaluations / accuracy
  double comparisons_per_iteration = 0.0;    // 2 * |S|
  double brute_force_iterations = 0.0;       // 2^|S| / comparisons_per_iteration
  double mean_iterations = 0.0;              // sweeps per trial / accuracy
};

std::vector<SubsetSumBenchmarkRow> benchmark(const SubsetSumBenchmarkConfig& config);

}  // namespace rhc
