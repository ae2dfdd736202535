#include "rhc/phasor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rhc/errors.hpp"
#include "rhc/random.hpp"

namespace rhc {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

// exp(2*pi*i*k/L) for an index already reduced into [0, L).
Complex root_of_unity(std::int64_t k, std::int64_t period) {
  if (k == 0) return {1.0, 0.0};
  const double t = 2.0 * static_cast<double>(k) / static_cast<double>(period);
  return {cos_pi(t), sin_pi(t)};
}

}  // namespace

std::int64_t mod(std::int64_t a, std::int64_t m) noexcept {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) noexcept {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  const __int128 l = static_cast<__int128>(a / gcd(a, b)) * b;
  if (l > std::numeric_limits<std::int64_t>::max()) {
    throw ParameterError("period overflow in lcm");
  }
  return static_cast<std::int64_t>(l);
}

std::int64_t centered_residue(std::int64_t u, std::int64_t m) noexcept {
  const std::int64_t r = mod(u, m);
  return 2 * r > m ? r - m : r;
}

double sin_pi(double x) noexcept {
  // Reduce to [-1, 1]; exact for moderately sized arguments.
  const double r = x - 2.0 * std::round(0.5 * x);
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(std::numbers::pi * r);
}

double cos_pi(double x) noexcept {
  const double r = x - 2.0 * std::round(0.5 * x);
  if (r == 0.0) return 1.0;
  if (r == 1.0 || r == -1.0) return -1.0;
  if (r == 0.5 || r == -0.5) return 0.0;
  return std::cos(std::numbers::pi * r);
}

ExactVector::ExactVector(std::int64_t period, std::vector<std::int64_t> indices)
    : period_(period), indices_(std::move(indices)) {
  if (period < 1) throw ParameterError("exact vector period must be >= 1");
  for (auto& k : indices_) k = mod(k, period_);
}

ExactVector ExactVector::with_period(std::int64_t period) const {
  if (period % period_ != 0) {
    throw DimensionMismatch("period " + std::to_string(period) + " is not a multiple of " +
                            std::to_string(period_));
  }
  const std::int64_t scale = period / period_;
  std::vector<std::int64_t> out(indices_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = indices_[j] * scale;
  return ExactVector(period, std::move(out));
}

ModulusBase sample_base(std::int64_t modulus, std::size_t dim, std::uint64_t seed,
                        bool nonzero_only) {
  if (modulus < 2) throw ParameterError("modulus must be >= 2, got " + std::to_string(modulus));
  if (dim < 1) throw ParameterError("dimension must be >= 1");

  ModulusBase base{modulus, dim, seed, nonzero_only, std::vector<std::int64_t>(dim)};
  Rng rng(seed);
  const auto m = static_cast<std::uint64_t>(modulus);
  for (auto& u : base.phase_indices) {
    u = nonzero_only ? 1 + static_cast<std::int64_t>(rng.below(m - 1))
                     : static_cast<std::int64_t>(rng.below(m));
  }
  return base;
}

void validate(const ModulusBase& base) {
  if (base.modulus < 2) throw ValidationError("modulus must be >= 2, got " + std::to_string(base.modulus));
  if (base.dim < 1) throw ValidationError("dimension must be >= 1");
  if (base.phase_indices.size() != base.dim) {
    throw ValidationError("base has " + std::to_string(base.phase_indices.size()) +
                          " phase indices, expected " + std::to_string(base.dim));
  }
  for (std::size_t j = 0; j < base.dim; ++j) {
    const std::int64_t u = base.phase_indices[j];
    if (u < 0 || u >= base.modulus || (base.nonzero_only && u == 0)) {
      throw ValidationError("phase index " + std::to_string(u) + " at component " +
                            std::to_string(j) + " invalid for modulus " + std::to_string(base.modulus));
    }
  }
}

ExactVector encode_integer(const ModulusBase& base, std::int64_t x) {
  const std::int64_t m = base.modulus;
  const std::int64_t xr = mod(x, m);
  std::vector<std::int64_t> idx(base.dim);
  for (std::size_t j = 0; j < base.dim; ++j) idx[j] = mulmod(base.phase_indices[j], xr, m);
  return ExactVector(m, std::move(idx));
}

DenseVector encode_rational(const ModulusBase& base, double q) {
  const double m = static_cast<double>(base.modulus);
  DenseVector out(base.dim);
  for (std::size_t j = 0; j < base.dim; ++j) {
    const double c = static_cast<double>(centered_residue(base.phase_indices[j], base.modulus));
    // Phase 2*pi*c*q/m, with c*q reduced modulo m first (remainder is exact).
    const double t = 2.0 * std::remainder(c * q, m) / m;
    out[j] = {cos_pi(t), sin_pi(t)};
  }
  return out;
}

ExactVector identity(std::size_t dim) {
  return ExactVector(1, std::vector<std::int64_t>(dim, 0));
}

DenseVector to_dense(const ExactVector& v) {
  DenseVector out(v.dim());
  for (std::size_t j = 0; j < v.dim(); ++j) out[j] = root_of_unity(v[j], v.period());
  return out;
}

double similarity(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    acc += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
  }
  return acc / static_cast<double>(a.size());
}

double similarity(const ExactVector& a, const ExactVector& b) {
  require_same_dim(a.dim(), b.dim());
  const std::int64_t period = lcm(a.period(), b.period());
  const std::int64_t sa = period / a.period();
  const std::int64_t sb = period / b.period();
  double acc = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const std::int64_t d = mod(mulmod(a[j], sa, period) - mulmod(b[j], sb, period), period);
    acc += d == 0 ? 1.0 : root_of_unity(d, period).real();
  }
  return acc / static_cast<double>(a.dim());
}

ExactVector hadamard(const ExactVector& a, const ExactVector& b) {
  require_same_dim(a.dim(), b.dim());
  const std::int64_t period = lcm(a.period(), b.period());
  const std::int64_t sa = period / a.period();
  const std::int64_t sb = period / b.period();
  std::vector<std::int64_t> idx(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    idx[j] = (mulmod(a[j], sa, period) + mulmod(b[j], sb, period)) % period;
  }
  return ExactVector(period, std::move(idx));
}

DenseVector hadamard(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size());
  DenseVector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
  return out;
}

ExactVector conjugate(const ExactVector& v) {
  std::vector<std::int64_t> idx(v.dim());
  for (std::size_t j = 0; j < v.dim(); ++j) idx[j] = v[j] == 0 ? 0 : v.period() - v[j];
  return ExactVector(v.period(), std::move(idx));
}

DenseVector conjugate(std::span<const Complex> v) {
  DenseVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = std::conj(v[j]);
  return out;
}

DenseVector phase_normalize(std::span<const Complex> v, double zero_tolerance) {
  DenseVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double mag = std::abs(v[j]);
    out[j] = mag > zero_tolerance ? v[j] / mag : Complex{1.0, 0.0};
  }
  return out;
}

DenseVector add_phase_noise(std::span<const Complex> v, const NoiseModel& noise) {
  if (!(noise.kappa >= 0.0)) throw ParameterError("noise concentration kappa must be >= 0");
  DenseVector out(v.begin(), v.end());
  if (noise.noiseless()) return out;
  Rng rng(noise.seed);
  for (auto& z : out) {
    const double theta = rng.von_mises(noise.kappa);
    z *= Complex{std::cos(theta), std::sin(theta)};
    z /= std::abs(z);
  }
  return out;
}

}  // namespace rhc
