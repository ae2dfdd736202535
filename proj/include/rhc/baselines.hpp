#pragma once

// Locality-preserving reference encoders (thermometer, float, scatter) and
// least-squares fits of standard kernel shapes to their similarity curves.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rhc {

using Bipolar = std::vector<std::int8_t>;

// First s components +1, the rest -1; 0 <= s <= D.
Bipolar thermometer_encode(std::int64_t s, std::size_t dim);
// Ones on [s, s + w), zeros elsewhere; 0 <= s <= D - w.
Bipolar float_encode(std::int64_t s, std::size_t dim, std::size_t width);
std::int64_t float_levels(std::size_t dim, std::size_t width);  // D - w + 1

// z(0) uniform random signs; each later level negates every component of the
// previous one independently with probability p.
std::vector<Bipolar> scatter_encode(std::size_t levels, std::size_t dim, double p, std::uint64_t seed);

// <a, b> / D.
double cosine(std::span<const std::int8_t> a, std::span<const std::int8_t> b);
// <a, b> / w for float codes.
double float_overlap(std::span<const std::int8_t> a, std::span<const std::int8_t> b, std::size_t width);

// Closed forms: 1 - 2|d|/D and max(0, w - |d|) / w.
double thermometer_kernel(std::int64_t delta, std::size_t dim);
double float_kernel(std::int64_t delta, std::size_t width);
// Expected scatter similarity after |d| steps: (1 - 2p)^|d|.
double scatter_kernel(std::int64_t delta, double p);

struct ScatterPoint {
  std::int64_t delta = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double expected = 0.0;
};

// similarity(z(0), z(delta)) for delta in [0, max_delta], averaged over
// `seeds` independent chains (seeds derived from `seed`).
std::vector<ScatterPoint> scatter_curve(std::size_t dim, double p, std::int64_t max_delta,
                                        std::size_t seeds, std::uint64_t seed);

enum class KernelFamily {
  kExponentiatedTriangular,  // max(0, 1 - gamma |d|)^alpha
  kSquaredExponential,       // exp(-d^2 / (2 l^2))
  kRationalQuadratic,        // (1 + d^2 / (2 alpha l^2))^-alpha
};

std::string to_string(KernelFamily family);
double kernel_family_value(KernelFamily family, std::span<const double> params, double delta);

struct KernelFit {
  KernelFamily family{};
  std::vector<double> params;  // {gamma, alpha}, {l} or {alpha, l}
  double mse = 0.0;
};

// Minimizes the mean squared error over the curve with Nelder-Mead on
// log-parameters.
KernelFit fit_kernel(KernelFamily family, std::span<const double> deltas,
                     std::span<const double> values);
std::vector<KernelFit> fit_all_kernels(std::span<const double> deltas, std::span<const double> values);

}  // namespace rhc
