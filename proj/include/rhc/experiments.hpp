#pragma once

// Seeded decoding experiments: accuracy and cost of resonator decoding as the
// range M, dimension D, number of moduli K and phase noise vary.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rhc/resonator.hpp"

namespace rhc {

// K consecutive primes starting at the smallest prime >= start.
std::vector<std::int64_t> consecutive_primes(std::int64_t start, std::size_t count);

// K consecutive primes whose product is closest to target (ties: smaller).
std::vector<std::int64_t> moduli_near(double target, std::size_t count);

// E[cos theta] for theta ~ von Mises(0, kappa): I1(kappa) / I0(kappa); 1 for
// kappa = inf.
double expected_noisy_similarity(double kappa);

// The resonator config used for a noisy input: the spurious-fixed-point
// threshold is scaled by the similarity a correct decode can reach.
ResonatorConfig noise_adjusted(ResonatorConfig config, double kappa);

struct DecodePoint {
  std::size_t dim = 0;
  std::vector<std::int64_t> moduli;
  std::int64_t range = 0;
  double kappa = std::numeric_limits<double>::infinity();
  int trials = 0;
  double accuracy = 0.0;
  double mean_evaluations = 0.0;
  double normalized_evaluations = 0.0;  // mean_evaluations / accuracy (inf if 0)
  bool capacity_flag = false;           // accuracy >= threshold
  std::uint64_t seed = 0;
};

// `trials` random x in [0, M), each encoded, perturbed by von Mises noise and
// decoded; correct when the decoded value equals x. Trials run in parallel
// with per-trial seeds, so results do not depend on the thread count.
DecodePoint decode_point(const std::vector<std::int64_t>& moduli, std::size_t dim, double kappa,
                         int trials, const ResonatorConfig& resonator, double threshold,
                         std::uint64_t seed);

struct CapacityConfig {
  std::size_t dim = 1024;
  std::size_t num_moduli = 2;
  double kappa = std::numeric_limits<double>::infinity();
  double threshold = 0.95;       // capacity criterion
  double stop_threshold = 0.5;   // sweep ends once accuracy falls below this
  int trials = 100;
  double start_range = 100.0;
  double growth = 1.3;           // geometric step in target M
  double max_range = 1e7;
  ResonatorConfig resonator{};
  std::uint64_t seed = 0;
};

struct CapacityResult {
  std::vector<DecodePoint> curve;
  // Largest M reached before the first point below threshold (0 if none).
  std::int64_t capacity = 0;
};

CapacityResult capacity_experiment(const CapacityConfig& config);

struct SubIntegerPoint {
  std::size_t dim = 0;
  std::vector<std::int64_t> moduli;
  std::int64_t range = 0;
  int partitions = 0;
  double kappa = std::numeric_limits<double>::infinity();
  int trials = 0;
  double accuracy = 0.0;
  double search_space = 0.0;  // M * r
  double bits_per_vector = 0.0;
  double mean_evaluations = 0.0;
  std::uint64_t seed = 0;
};

// Random q = n + k / r with n uniform on [0, M) and k uniform on [0, r).
SubIntegerPoint sub_integer_point(const std::vector<std::int64_t>& moduli, std::size_t dim,
                                  int partitions, double kappa, int trials,
                                  const ResonatorConfig& resonator, std::uint64_t seed);

// JSON-lines records.
std::string to_json_line(const DecodePoint& p);
std::string to_json_line(const SubIntegerPoint& p);

}  // namespace rhc
