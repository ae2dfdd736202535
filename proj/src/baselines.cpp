#include "rhc/baselines.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "rhc/errors.hpp"
#include "rhc/random.hpp"

namespace rhc {

Bipolar thermometer_encode(std::int64_t s, std::size_t dim) {
  if (s < 0 || s > static_cast<std::int64_t>(dim)) {
    throw ParameterError("thermometer level " + std::to_string(s) + " outside [0, " +
                         std::to_string(dim) + "]");
  }
  Bipolar z(dim, -1);
  std::fill(z.begin(), z.begin() + s, std::int8_t{1});
  return z;
}

Bipolar float_encode(std::int64_t s, std::size_t dim, std::size_t width) {
  if (width == 0 || width > dim) throw ParameterError("float code needs 1 <= w <= D");
  if (s < 0 || s > static_cast<std::int64_t>(dim - width)) {
    throw ParameterError("float level " + std::to_string(s) + " outside [0, D - w]");
  }
  Bipolar z(dim, 0);
  std::fill(z.begin() + s, z.begin() + s + static_cast<std::int64_t>(width), std::int8_t{1});
  return z;
}

std::int64_t float_levels(std::size_t dim, std::size_t width) {
  if (width == 0 || width > dim) throw ParameterError("float code needs 1 <= w <= D");
  return static_cast<std::int64_t>(dim - width + 1);
}

std::vector<Bipolar> scatter_encode(std::size_t levels, std::size_t dim, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("scatter flip probability must lie in [0, 1]");
  if (levels == 0) return {};
  Rng rng(seed);
  std::vector<Bipolar> out;
  out.reserve(levels);
  Bipolar z(dim);
  for (auto& c : z) c = rng.below(2) == 0 ? std::int8_t{-1} : std::int8_t{1};
  out.push_back(z);
  for (std::size_t s = 1; s < levels; ++s) {
    for (auto& c : z) {
      if (rng.uniform() < p) c = static_cast<std::int8_t>(-c);
    }
    out.push_back(z);
  }
  return out;
}

double cosine(std::span<const std::int8_t> a, std::span<const std::int8_t> b) {
  if (a.size() != b.size() || a.empty()) throw DimensionMismatch("codes differ in length");
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return static_cast<double>(dot) / static_cast<double>(a.size());
}

double float_overlap(std::span<const std::int8_t> a, std::span<const std::int8_t> b, std::size_t width) {
  if (a.size() != b.size()) throw DimensionMismatch("codes differ in length");
  if (width == 0) throw ParameterError("width must be positive");
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return static_cast<double>(dot) / static_cast<double>(width);
}

double thermometer_kernel(std::int64_t delta, std::size_t dim) {
  const auto d = static_cast<std::int64_t>(dim);
  return static_cast<double>(d - 2 * std::llabs(delta)) / static_cast<double>(d);
}

double float_kernel(std::int64_t delta, std::size_t width) {
  const auto w = static_cast<std::int64_t>(width);
  return static_cast<double>(std::max<std::int64_t>(0, w - std::llabs(delta))) / static_cast<double>(w);
}

double scatter_kernel(std::int64_t delta, double p) {
  return std::pow(1.0 - 2.0 * p, static_cast<double>(std::llabs(delta)));
}

std::vector<ScatterPoint> scatter_curve(std::size_t dim, double p, std::int64_t max_delta,
                                        std::size_t seeds, std::uint64_t seed) {
  if (max_delta < 0) throw ParameterError("max_delta must be >= 0");
  if (seeds < 2) throw ParameterError("scatter curve needs at least two seeds");
  const auto levels = static_cast<std::size_t>(max_delta) + 1;
  std::vector<std::vector<double>> sims(seeds, std::vector<double>(levels));
#pragma omp parallel for schedule(static)
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto chain = scatter_encode(levels, dim, p, derive_seed(seed, s));
    for (std::size_t d = 0; d < levels; ++d) sims[s][d] = cosine(chain[0], chain[d]);
  }
  std::vector<ScatterPoint> out(levels);
  const double n = static_cast<double>(seeds);
  for (std::size_t d = 0; d < levels; ++d) {
    double mean = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) mean += sims[s][d];
    mean /= n;
    double var = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) var += (sims[s][d] - mean) * (sims[s][d] - mean);
    var /= n - 1.0;
    out[d] = {static_cast<std::int64_t>(d), mean, std::sqrt(var / n),
              scatter_kernel(static_cast<std::int64_t>(d), p)};
  }
  return out;
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kExponentiatedTriangular: return "exponentiated_triangular";
    case KernelFamily::kSquaredExponential: return "squared_exponential";
    case KernelFamily::kRationalQuadratic: return "rational_quadratic";
  }
  return "unknown";
}

double kernel_family_value(KernelFamily family, std::span<const double> params, double delta) {
  const double d = std::abs(delta);
  switch (family) {
    case KernelFamily::kExponentiatedTriangular:
      return std::pow(std::max(0.0, 1.0 - params[0] * d), params[1]);
    case KernelFamily::kSquaredExponential:
      return std::exp(-d * d / (2.0 * params[0] * params[0]));
    case KernelFamily::kRationalQuadratic:
      return std::pow(1.0 + d * d / (2.0 * params[0] * params[1] * params[1]), -params[0]);
  }
  return 0.0;
}

namespace {

struct FitData {
  KernelFamily family;
  std::span<const double> deltas;
  std::span<const double> values;
};

double mse_of(const gsl_vector* logp, void* raw) {
  const auto* data = static_cast<const FitData*>(raw);
  std::vector<double> p(logp->size);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(gsl_vector_get(logp, i));
  double err = 0.0;
  for (std::size_t i = 0; i < data->deltas.size(); ++i) {
    const double r = kernel_family_value(data->family, p, data->deltas[i]) - data->values[i];
    err += r * r;
  }
  return err / static_cast<double>(data->deltas.size());
}

}  // namespace

KernelFit fit_kernel(KernelFamily family, std::span<const double> deltas, std::span<const double> values) {
  if (deltas.size() != values.size() || deltas.empty()) {
    throw DimensionMismatch("fit needs matching, non-empty curves");
  }
  double span = 1.0;
  for (auto d : deltas) span = std::max(span, std::abs(d));
  std::vector<double> start;
  switch (family) {
    case KernelFamily::kExponentiatedTriangular: start = {0.5 / span, 1.0}; break;
    case KernelFamily::kSquaredExponential: start = {span / 3.0}; break;
    case KernelFamily::kRationalQuadratic: start = {1.0, span / 3.0}; break;
  }

  FitData data{family, deltas, values};
  gsl_multimin_function fn{&mse_of, start.size(), &data};
  gsl_vector* x = gsl_vector_alloc(start.size());
  gsl_vector* step = gsl_vector_alloc(start.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    gsl_vector_set(x, i, std::log(start[i]));
    gsl_vector_set(step, i, 0.5);
  }
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, start.size());
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  for (int it = 0; it < 5000; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-10) == GSL_SUCCESS) break;
  }
  KernelFit fit;
  fit.family = family;
  for (std::size_t i = 0; i < start.size(); ++i) fit.params.push_back(std::exp(gsl_vector_get(s->x, i)));
  fit.mse = s->fval;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return fit;
}

std::vector<KernelFit> fit_all_kernels(std::span<const double> deltas, std::span<const double> values) {
  return {fit_kernel(KernelFamily::kExponentiatedTriangular, deltas, values),
          fit_kernel(KernelFamily::kSquaredExponential, deltas, values),
          fit_kernel(KernelFamily::kRationalQuadratic, deltas, values)};
}

}  // namespace rhc
