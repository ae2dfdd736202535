#include "rhc/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rhc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n + 1) % n;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r > limit);
  return r % n;
}

double Rng::phase() {
  return (2.0 * uniform() - 1.0) * std::numbers::pi;
}

double Rng::von_mises(double kappa) {
  constexpr double pi = std::numbers::pi;
  if (kappa < 1e-8) return phase();

  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);

  for (;;) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double u3 = uniform();
    const double z = std::cos(pi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0 || (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)) {
      const double theta = std::acos(std::clamp(f, -1.0, 1.0));
      return u3 < 0.5 ? -theta : theta;
    }
  }
}

}  // namespace rhc
