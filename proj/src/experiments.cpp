#include "rhc/experiments.hpp"

#include <cmath>

#include "json.hpp"
#include "rhc/errors.hpp"
#include "rhc/random.hpp"

namespace rhc {

namespace {

double product(const std::vector<std::int64_t>& v) {
  double p = 1.0;
  for (auto x : v) p *= static_cast<double>(x);
  return p;
}

std::int64_t next_prime(std::int64_t n) {
  if (n < 2) n = 2;
  while (!is_prime(n)) ++n;
  return n;
}

void check_trials(int trials) {
  if (trials < 1) throw ParameterError("experiments need trials >= 1");
}

nlohmann::ordered_json kappa_json(double kappa) {
  if (std::isinf(kappa)) return "inf";
  return kappa;
}

}  // namespace

std::vector<std::int64_t> consecutive_primes(std::int64_t start, std::size_t count) {
  std::vector<std::int64_t> out;
  std::int64_t p = next_prime(start);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(p);
    p = next_prime(p + 1);
  }
  return out;
}

std::vector<std::int64_t> moduli_near(double target, std::size_t count) {
  if (count == 0) throw ParameterError("need at least one modulus");
  if (!(target >= 1.0)) throw ParameterError("target range must be >= 1");
  // Products increase with the starting prime: walk up until past target.
  std::vector<std::int64_t> best = consecutive_primes(2, count);
  double best_err = std::abs(std::log(product(best) / target));
  for (std::int64_t p = 3;; p = next_prime(p + 1)) {
    auto cand = consecutive_primes(p, count);
    const double prod = product(cand);
    const double err = std::abs(std::log(prod / target));
    if (err < best_err) {
      best_err = err;
      best = std::move(cand);
    }
    if (prod > target) break;
  }
  return best;
}

double expected_noisy_similarity(double kappa) {
  if (kappa < 0.0) throw ParameterError("kappa must be >= 0");
  if (std::isinf(kappa)) return 1.0;
  if (kappa == 0.0) return 0.0;
  if (kappa > 500.0) return 1.0 - 0.5 / kappa - 0.125 / (kappa * kappa);  // I0, I1 overflow
  return std::cyl_bessel_i(1.0, kappa) / std::cyl_bessel_i(0.0, kappa);
}

ResonatorConfig noise_adjusted(ResonatorConfig config, double kappa) {
  config.verify_threshold *= expected_noisy_similarity(kappa);
  return config;
}

DecodePoint decode_point(const std::vector<std::int64_t>& moduli, std::size_t dim, double kappa,
                         int trials, const ResonatorConfig& resonator, double threshold,
                         std::uint64_t seed) {
  check_trials(trials);
  const ResidueSystem sys(moduli, dim, derive_seed(seed, 0));
  const auto codebooks = build_residue_codebooks(sys);
  const ResonatorConfig rc = noise_adjusted(resonator, kappa);

  std::vector<char> correct(static_cast<std::size_t>(trials), 0);
  std::vector<std::uint64_t> evals(static_cast<std::size_t>(trials), 0);
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t ts = derive_seed(seed, 1 + static_cast<std::uint64_t>(t));
    Rng rng(derive_seed(ts, 0));
    const auto x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(sys.range())));
    const DenseVector v =
        add_phase_noise(to_dense(encode(sys, x)), NoiseModel{kappa, derive_seed(ts, 1)});
    ResonatorConfig local = rc;
    local.seed = derive_seed(ts, 2);
    const DecodeResult d = decode_residue_number(sys, codebooks, v, local);
    correct[static_cast<std::size_t>(t)] = d.value == x ? 1 : 0;
    evals[static_cast<std::size_t>(t)] = d.evaluations;
  }

  DecodePoint p;
  p.dim = dim;
  p.moduli = moduli;
  p.range = sys.range();
  p.kappa = kappa;
  p.trials = trials;
  p.seed = seed;
  double hits = 0.0, total = 0.0;
  for (int t = 0; t < trials; ++t) {
    hits += correct[static_cast<std::size_t>(t)];
    total += static_cast<double>(evals[static_cast<std::size_t>(t)]);
  }
  p.accuracy = hits / trials;
  p.mean_evaluations = total / trials;
  p.normalized_evaluations = p.accuracy > 0.0 ? p.mean_evaluations / p.accuracy
                                              : std::numeric_limits<double>::infinity();
  p.capacity_flag = p.accuracy >= threshold;
  return p;
}

CapacityResult capacity_experiment(const CapacityConfig& config) {
  check_trials(config.trials);
  if (!(config.threshold > 0.0 && config.threshold <= 1.0)) {
    throw ParameterError("capacity threshold must lie in (0, 1]");
  }
  if (!(config.growth > 1.0)) throw ParameterError("capacity sweep growth must exceed 1");
  CapacityResult out;
  bool below = false;
  std::int64_t last_range = 0;
  std::uint64_t index = 0;
  for (double target = config.start_range; target <= config.max_range; target *= config.growth) {
    const auto moduli = moduli_near(target, config.num_moduli);
    const auto range = static_cast<std::int64_t>(product(moduli));
    if (range <= last_range) continue;
    last_range = range;
    DecodePoint p = decode_point(moduli, config.dim, config.kappa, config.trials, config.resonator,
                                 config.threshold, derive_seed(config.seed, index++));
    if (!p.capacity_flag) below = true;
    if (!below) out.capacity = p.range;
    const bool stop = p.accuracy < config.stop_threshold;
    out.curve.push_back(std::move(p));
    if (stop) break;
  }
  return out;
}

SubIntegerPoint sub_integer_point(const std::vector<std::int64_t>& moduli, std::size_t dim,
                                  int partitions, double kappa, int trials,
                                  const ResonatorConfig& resonator, std::uint64_t seed) {
  check_trials(trials);
  if (partitions < 1) throw ParameterError("partitions must be >= 1");
  const ResidueSystem sys(moduli, dim, derive_seed(seed, 0));
  const auto codebooks = build_residue_codebooks(sys);

  std::vector<char> correct(static_cast<std::size_t>(trials), 0);
  std::vector<std::uint64_t> evals(static_cast<std::size_t>(trials), 0);
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t ts = derive_seed(seed, 1 + static_cast<std::uint64_t>(t));
    Rng rng(derive_seed(ts, 0));
    const auto n = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(sys.range())));
    const auto k = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(partitions)));
    const double q = static_cast<double>(n) + static_cast<double>(k) / partitions;
    const DenseVector v = add_phase_noise(encode_rational(sys, q), NoiseModel{kappa, derive_seed(ts, 1)});
    ResonatorConfig local = resonator;
    local.seed = derive_seed(ts, 2);
    const SubIntegerResult r = sub_integer_decode(sys, codebooks, v, partitions, local);
    correct[static_cast<std::size_t>(t)] = r.integer_part == n && r.offset == k ? 1 : 0;
    evals[static_cast<std::size_t>(t)] = r.evaluations;
  }

  SubIntegerPoint p;
  p.dim = dim;
  p.moduli = moduli;
  p.range = sys.range();
  p.partitions = partitions;
  p.kappa = kappa;
  p.trials = trials;
  p.seed = seed;
  double hits = 0.0, total = 0.0;
  for (int t = 0; t < trials; ++t) {
    hits += correct[static_cast<std::size_t>(t)];
    total += static_cast<double>(evals[static_cast<std::size_t>(t)]);
  }
  p.accuracy = hits / trials;
  p.mean_evaluations = total / trials;
  p.search_space = static_cast<double>(sys.range()) * partitions;
  p.bits_per_vector = bits_per_vector(p.accuracy, p.search_space);
  return p;
}

std::string to_json_line(const DecodePoint& p) {
  nlohmann::ordered_json j;
  j["D"] = p.dim;
  j["K"] = p.moduli.size();
  j["moduli"] = p.moduli;
  j["M"] = p.range;
  j["kappa"] = kappa_json(p.kappa);
  j["trials"] = p.trials;
  j["accuracy"] = p.accuracy;
  j["mean_evaluations"] = p.mean_evaluations;
  j["normalized_evaluations"] = std::isfinite(p.normalized_evaluations)
                                    ? nlohmann::ordered_json(p.normalized_evaluations)
                                    : nlohmann::ordered_json(nullptr);
  j["capacity_flag"] = p.capacity_flag;
  j["seed"] = p.seed;
  return j.dump();
}

std::string to_json_line(const SubIntegerPoint& p) {
  nlohmann::ordered_json j;
  j["D"] = p.dim;
  j["K"] = p.moduli.size();
  j["moduli"] = p.moduli;
  j["M"] = p.range;
  j["r"] = p.partitions;
  j["kappa"] = kappa_json(p.kappa);
  j["trials"] = p.trials;
  j["accuracy"] = p.accuracy;
  j["search_space"] = p.search_space;
  j["bits_per_vector"] = p.bits_per_vector;
  j["mean_evaluations"] = p.mean_evaluations;
  j["seed"] = p.seed;
  return j.dump();
}

}  // namespace rhc
