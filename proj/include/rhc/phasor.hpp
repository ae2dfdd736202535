#pragma once

// Phasor vectors: the code carrier for every encoder in the library.
//
// Two concrete forms share the same semantics. ExactVector stores each
// component as an integer phase index k modulo a common period L, denoting
// exp(2*pi*i*k/L); integer arithmetic on those indices makes every operation
// of the integer algebra bit-exact. DenseVector stores complex doubles and is
// used for rational encodings, noise, and resonator dynamics.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace rhc {

using Complex = std::complex<double>;
using DenseVector = std::vector<Complex>;

class ExactVector {
 public:
  ExactVector() = default;
  // Indices are reduced into [0, period).
  ExactVector(std::int64_t period, std::vector<std::int64_t> indices);

  [[nodiscard]] std::int64_t period() const noexcept { return period_; }
  [[nodiscard]] std::size_t dim() const noexcept { return indices_.size(); }
  [[nodiscard]] std::span<const std::int64_t> indices() const noexcept { return indices_; }
  [[nodiscard]] std::int64_t operator[](std::size_t j) const { return indices_[j]; }

  // Same vector expressed with a period that is a multiple of the current one.
  [[nodiscard]] ExactVector with_period(std::int64_t period) const;

  friend bool operator==(const ExactVector&, const ExactVector&) = default;

 private:
  std::int64_t period_ = 1;
  std::vector<std::int64_t> indices_;
};

// Random base vector for one modulus: D phase indices u_j in Z_m.
struct ModulusBase {
  std::int64_t modulus = 2;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  bool nonzero_only = false;
  std::vector<std::int64_t> phase_indices;

  friend bool operator==(const ModulusBase&, const ModulusBase&) = default;
};

// Indices in [0, m), length == dim, no zeros when nonzero_only.
void validate(const ModulusBase& base);

// Von Mises phase noise. kappa == +infinity means no noise.
struct NoiseModel {
  double kappa = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;

  [[nodiscard]] bool noiseless() const noexcept {
    return kappa == std::numeric_limits<double>::infinity();
  }
};

// Representative of u mod m in (-m/2, m/2].
std::int64_t centered_residue(std::int64_t u, std::int64_t m) noexcept;

// Non-negative a mod m.
std::int64_t mod(std::int64_t a, std::int64_t m) noexcept;

// (a * b) mod m without overflow, for a, b in [0, m).
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) noexcept;

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;
std::int64_t lcm(std::int64_t a, std::int64_t b);

ModulusBase sample_base(std::int64_t modulus, std::size_t dim, std::uint64_t seed,
                        bool nonzero_only = false);

// Component j has phase index (u_j * x) mod m.
ExactVector encode_integer(const ModulusBase& base, std::int64_t x);

// Component j is exp(i * phi_j * q), with phi_j = 2*pi*c_j/m and c_j the
// centered representative of u_j. Agrees with encode_integer on integers.
DenseVector encode_rational(const ModulusBase& base, double q);

// All-ones vector (period 1).
ExactVector identity(std::size_t dim);

DenseVector to_dense(const ExactVector& v);

// (1/D) Re <a, conj(b)>.
double similarity(std::span<const Complex> a, std::span<const Complex> b);
double similarity(const ExactVector& a, const ExactVector& b);

// Component-wise product. Exact operands yield period lcm(L1, L2).
ExactVector hadamard(const ExactVector& a, const ExactVector& b);
DenseVector hadamard(std::span<const Complex> a, std::span<const Complex> b);

ExactVector conjugate(const ExactVector& v);
DenseVector conjugate(std::span<const Complex> v);

// Divides each component by its magnitude. Components with magnitude at or
// below zero_tolerance become 1 + 0i.
DenseVector phase_normalize(std::span<const Complex> v, double zero_tolerance = 0.0);

// Perturbs every phase by an i.i.d. von Mises(0, kappa) draw.
DenseVector add_phase_noise(std::span<const Complex> v, const NoiseModel& noise);

// sin(pi x) and cos(pi x), exact at integers and half-integers.
double sin_pi(double x) noexcept;
double cos_pi(double x) noexcept;

}  // namespace rhc
