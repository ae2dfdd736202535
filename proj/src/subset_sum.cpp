#include "rhc/subset_sum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "json.hpp"
#include "rhc/errors.hpp"
#include "rhc/random.hpp"

namespace rhc {

std::int64_t sum_of(std::span<const std::int64_t> items, std::span<const std::size_t> subset) {
  std::int64_t s = 0;
  for (auto i : subset) s += items[i];
  return s;
}

void validate(const SubsetSumInstance& instance) {
  std::int64_t total = 0;
  for (auto s : instance.items) {
    if (s <= 0) throw ValidationError("subset-sum items must be positive");
    total += s;
  }
  if (instance.target < 0 || instance.target > total) {
    throw ValidationError("target " + std::to_string(instance.target) + " outside [0, " +
                          std::to_string(total) + "]");
  }
  if (instance.ground_truth) {
    for (auto i : *instance.ground_truth) {
      if (i >= instance.items.size()) throw ValidationError("ground-truth index out of range");
    }
    if (sum_of(instance.items, *instance.ground_truth) != instance.target) {
      throw ValidationError("ground-truth subset does not sum to the target");
    }
  }
}

std::vector<std::int64_t> consecutive_triple_moduli(std::int64_t m) {
  if (m < 3) throw ParameterError("triple moduli need m >= 3");
  for (;; ++m) {
    std::vector<std::int64_t> moduli{m - 1, m, m + 1};
    if (gcd(m - 1, m + 1) == 1) return moduli;  // gcd(m, m +- 1) is always 1
  }
}

SubsetSumInstance generate_instance(std::size_t n, const ResidueSystem& sys, std::uint64_t seed,
                                    std::size_t max_set_size) {
  if (n == 0) throw ParameterError("subset-sum instances need at least one item");
  if (max_set_size == 0) max_set_size = n;
  if (max_set_size < n) throw ParameterError("max_set_size must be >= n");
  const std::int64_t hi = sys.range() / (2 * static_cast<std::int64_t>(max_set_size));
  if (hi < 1) {
    throw ParameterError("range M = " + std::to_string(sys.range()) + " too small for " +
                         std::to_string(max_set_size) + " items");
  }
  Rng rng(seed);
  SubsetSumInstance inst;
  inst.seed = seed;
  inst.items.resize(n);
  for (auto& s : inst.items) s = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi)));
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.below(2) == 1) chosen.push_back(i);
  }
  inst.target = sum_of(inst.items, chosen);
  inst.ground_truth = std::move(chosen);
  validate(inst);
  return inst;
}

std::vector<Codebook> build_factors(std::span<const std::int64_t> items, const ResidueSystem& sys) {
  std::vector<Codebook> out;
  out.reserve(items.size());
  const ExactVector zero = encode(sys, 0);
  for (auto s : items) {
    const std::vector<ExactVector> entries{zero, encode(sys, s)};
    out.push_back(Codebook::from_exact({0, 1}, entries));
  }
  return out;
}

SubsetSumResult solve(const SubsetSumInstance& instance, const ResidueSystem& sys,
                      const ResonatorConfig& config) {
  validate(instance);
  std::int64_t total = 0;
  for (auto s : instance.items) total += s;
  if (total >= sys.range()) {
    throw ParameterError("range M must exceed the item sum (M = " + std::to_string(sys.range()) +
                         ", sum = " + std::to_string(total) + ")");
  }

  const auto factors = build_factors(instance.items, sys);
  const DenseVector v = to_dense(encode(sys, instance.target));

  auto selected = [](std::span<const std::size_t> indices) {
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] == 1) subset.push_back(k);
    }
    return subset;
  };
  const AcceptFn exact_check = [&](std::span<const std::size_t> indices) {
    return sum_of(instance.items, selected(indices)) == instance.target;
  };

  // The check is exact, so a correct state counts as soon as it appears.
  ResonatorConfig rc = config;
  rc.accept_each_sweep = true;
  const FactorizeResult f = resonator_factorize(v, factors, rc, exact_check);

  SubsetSumResult out;
  out.attempts = f.attempts;
  out.evaluations = f.total_evaluations;
  out.attempt_success = f.attempt_success;
  out.subset = selected(f.indices);
  out.success = f.success && sum_of(instance.items, out.subset) == instance.target;
  if (!out.success) out.subset.clear();
  return out;
}

std::optional<std::vector<std::size_t>> exact_baseline(std::span<const std::int64_t> items,
                                                       std::int64_t target) {
  if (target < 0) return std::nullopt;
  // reachable sum -> (last item index, previous sum)
  std::unordered_map<std::int64_t, std::pair<std::size_t, std::int64_t>> parent;
  std::vector<std::int64_t> frontier{0};
  parent.emplace(0, std::pair{items.size(), std::int64_t{-1}});
  for (std::size_t i = 0; i < items.size() && !parent.contains(target); ++i) {
    const std::size_t existing = frontier.size();
    for (std::size_t f = 0; f < existing; ++f) {
      const std::int64_t s = frontier[f] + items[i];
      if (s > target || parent.contains(s)) continue;
      parent.emplace(s, std::pair{i, frontier[f]});
      frontier.push_back(s);
    }
  }
  if (!parent.contains(target)) return std::nullopt;
  std::vector<std::size_t> subset;
  for (std::int64_t s = target; s != 0;) {
    const auto [i, prev] = parent.at(s);
    subset.push_back(i);
    s = prev;
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

std::optional<std::vector<std::size_t>> enumerate_subsets(std::span<const std::int64_t> items,
                                                          std::int64_t target) {
  if (items.size() > 30) throw ParameterError("enumeration limited to 30 items");
  const std::uint64_t count = std::uint64_t{1} << items.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if ((mask >> i) & 1U) s += items[i];
    }
    if (s == target) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if ((mask >> i) & 1U) subset.push_back(i);
      }
      return subset;
    }
  }
  return std::nullopt;
}

std::string instance_to_json(const SubsetSumInstance& instance) {
  nlohmann::ordered_json j;
  j["items"] = instance.items;
  j["target"] = instance.target;
  j["seed"] = instance.seed;
  if (instance.ground_truth) j["ground_truth"] = *instance.ground_truth;
  return j.dump() + "\n";
}

SubsetSumInstance instance_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ParseError("subset-sum instance must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "items" && key != "target" && key != "seed" && key != "ground_truth") {
      throw ParseError("unknown key \"" + key + "\" in subset-sum instance");
    }
  }
  SubsetSumInstance inst;
  try {
    inst.items = j.at("items").get<std::vector<std::int64_t>>();
    inst.target = j.at("target").get<std::int64_t>();
    if (j.contains("seed")) inst.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("ground_truth")) inst.ground_truth = j["ground_truth"].get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed subset-sum instance: ") + e.what());
  }
  validate(inst);
  return inst;
}

std::string result_to_json_line(const SubsetSumResult& result) {
  nlohmann::ordered_json j;
  j["success"] = result.success;
  j["subset"] = result.subset;
  j["restarts_used"] = result.attempts > 0 ? result.attempts - 1 : 0;
  j["evaluations"] = result.evaluations;
  return j.dump();
}

std::vector<SubsetSumBenchmarkRow> benchmark(const SubsetSumBenchmarkConfig& config) {
  if (config.trials < 1) throw ParameterError("benchmark needs trials >= 1");
  const auto moduli = consecutive_triple_moduli(config.m);
  const std::size_t largest = *std::max_element(config.sizes.begin(), config.sizes.end());
  const int budget = 1 + config.resonator.max_restarts;

  std::vector<SubsetSumBenchmarkRow> rows;
  std::uint64_t cell = 0;
  for (const auto dim : config.dims) {
    for (const auto n : config.sizes) {
      const std::uint64_t cell_seed = derive_seed(config.seed, cell++);
      const ResidueSystem sys(moduli, dim, derive_seed(cell_seed, 0));
      std::vector<SubsetSumResult> results(static_cast<std::size_t>(config.trials));

#pragma omp parallel for schedule(dynamic)
      for (int t = 0; t < config.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cell_seed, 1 + static_cast<std::uint64_t>(t));
        const auto inst = generate_instance(n, sys, derive_seed(trial_seed, 0), largest);
        ResonatorConfig rc = config.resonator;
        rc.seed = derive_seed(trial_seed, 1);
        results[static_cast<std::size_t>(t)] = solve(inst, sys, rc);
      }

      SubsetSumBenchmarkRow row;
      row.set_size = n;
      row.dim = dim;
      row.moduli = moduli;
      row.trials = config.trials;
      row.success_within.assign(static_cast<std::size_t>(budget), 0.0);
      double evals = 0.0, first = 0.0, solved = 0.0;
      for (const auto& r : results) {
        evals += static_cast<double>(r.evaluations);
        if (!r.attempt_success.empty() && r.attempt_success.front()) first += 1.0;
        if (r.success) {
          solved += 1.0;
          for (int t = r.attempts; t <= budget; ++t) row.success_within[static_cast<std::size_t>(t - 1)] += 1.0;
        }
      }
      const double trials = static_cast<double>(config.trials);
      for (auto& s : row.success_within) s /= trials;
      row.first_attempt_accuracy = first / trials;
      row.accuracy = solved / trials;
      row.mean_evaluations = evals / trials;
      row.comparisons_per_iteration = 2.0 * static_cast<double>(n);
      row.expected_evaluations = row.accuracy > 0 ? row.mean_evaluations / row.accuracy : 0.0;
      row.mean_iterations = row.expected_evaluations / row.comparisons_per_iteration;
      row.brute_force_iterations =
          std::pow(2.0, static_cast<double>(n)) / row.comparisons_per_iteration;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace rhc
