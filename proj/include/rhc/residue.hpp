#pragma once

// Residue number system composed from per-modulus phasor bases.
//
// An integer x is encoded as the Hadamard product of its per-modulus
// encodings, so the composed vector is periodic in M = prod(m_k) while the
// decoder only ever needs sum(m_k) reference vectors.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rhc/phasor.hpp"

namespace rhc {

class ResidueSystem {
 public:
  // Per-base seeds are derived from `seed`.
  ResidueSystem(std::vector<std::int64_t> moduli, std::size_t dim, std::uint64_t seed,
                bool nonzero_only = false);
  // Explicit per-base seeds, as recorded by serialization.
  ResidueSystem(std::vector<std::int64_t> moduli, std::size_t dim,
                std::vector<std::uint64_t> base_seeds, bool nonzero_only = false);
  // Stored bases (e.g. loaded from disk); must agree in dim and nonzero_only.
  explicit ResidueSystem(std::vector<ModulusBase> bases);

  [[nodiscard]] std::span<const std::int64_t> moduli() const noexcept { return moduli_; }
  [[nodiscard]] std::size_t num_moduli() const noexcept { return moduli_.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] bool nonzero_only() const noexcept { return nonzero_only_; }
  [[nodiscard]] std::span<const ModulusBase> bases() const noexcept { return bases_; }
  [[nodiscard]] const ModulusBase& base(std::size_t k) const { return bases_.at(k); }
  [[nodiscard]] std::vector<std::uint64_t> base_seeds() const;

  // M = prod(m_k).
  [[nodiscard]] std::int64_t range() const noexcept { return range_; }
  // b = sum(m_k).
  [[nodiscard]] std::int64_t codebook_budget() const noexcept { return budget_; }

 private:
  void validate_moduli();
  void validate_and_build(std::span<const std::uint64_t> base_seeds);

  std::vector<std::int64_t> moduli_;
  std::size_t dim_ = 0;
  bool nonzero_only_ = false;
  std::vector<ModulusBase> bases_;
  std::int64_t range_ = 1;
  std::int64_t budget_ = 0;
};

inline ResidueSystem make_residue_system(std::vector<std::int64_t> moduli, std::size_t dim,
                                         std::uint64_t seed, bool nonzero_only = false) {
  return ResidueSystem(std::move(moduli), dim, seed, nonzero_only);
}

// Throws ValidationError naming the first pair with gcd > 1.
void require_coprime(std::span<const std::int64_t> moduli);

// Composed encoding, period M.
ExactVector encode(const ResidueSystem& sys, std::int64_t x);
// The K per-modulus encodings z_{m_k}(x), each with period m_k.
std::vector<ExactVector> encode_factors(const ResidueSystem& sys, std::int64_t x);
// Composed rational encoding (dense).
DenseVector encode_rational(const ResidueSystem& sys, double q);

ExactVector add(const ResidueSystem& sys, const ExactVector& a, const ExactVector& b);
ExactVector subtract(const ResidueSystem& sys, const ExactVector& a, const ExactVector& b);

// Vector of modular inverses of a base's phase indices.
struct AntiBase {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> inverse_indices;
};

bool is_prime(std::int64_t n) noexcept;
// Inverse of a mod m; m need not be prime but gcd(a, m) must be 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

AntiBase anti_base(const ModulusBase& base);

// Component-wise index product r_j * s_j mod m for two period-m vectors.
ExactVector f_op(const ExactVector& a, const ExactVector& b, std::int64_t m);

// Precomputed m x m product table plus inverses for one prime modulus. The
// table path must agree bit-exactly with the arithmetic path.
class PhaseProductTable {
 public:
  explicit PhaseProductTable(std::int64_t m);
  [[nodiscard]] std::int64_t modulus() const noexcept { return m_; }
  [[nodiscard]] std::int64_t product(std::int64_t r, std::int64_t s) const {
    return table_[static_cast<std::size_t>(r * m_ + s)];
  }
  [[nodiscard]] std::int64_t inverse(std::int64_t u) const;
  [[nodiscard]] ExactVector apply(const ExactVector& a, const ExactVector& b) const;

 private:
  std::int64_t m_;
  std::vector<std::int64_t> table_;
  std::vector<std::int64_t> inverses_;
};

// x1 * x2 from the per-modulus factors of both operands (the exact path).
// Requires prime moduli and a system sampled with nonzero_only.
ExactVector multiply(const ResidueSystem& sys, std::span<const ExactVector> a_factors,
                     std::span<const ExactVector> b_factors);
// Same product computed through PhaseProductTable lookups.
ExactVector multiply_tabulated(const ResidueSystem& sys, std::span<const ExactVector> a_factors,
                               std::span<const ExactVector> b_factors);
// x * c^{-1} (mod M) for a constant c invertible modulo every prime modulus.
ExactVector multiply_by_constant_inverse(const ResidueSystem& sys,
                                         std::span<const ExactVector> factors, std::int64_t c);

// Splits a composed exact vector into its per-modulus components. Only
// possible for exact vectors; dense inputs go through the resonator.
std::vector<ExactVector> split_factors(const ResidueSystem& sys, const ExactVector& v);

std::vector<std::int64_t> to_residues(std::int64_t x, std::span<const std::int64_t> moduli);
// Unique x in [0, M) with x = r_k (mod m_k).
std::int64_t crt_reconstruct(std::span<const std::int64_t> residues,
                             std::span<const std::int64_t> moduli);

// Landau's function: maximum lcm over integer partitions of b. Exact
// enumeration; b is limited to kLandauMax.
inline constexpr int kLandauMax = 60;
std::int64_t landau_g(int b);

// The primes in ascending order starting at 2, first `count` of them.
std::vector<std::int64_t> first_primes(std::size_t count);

}  // namespace rhc
