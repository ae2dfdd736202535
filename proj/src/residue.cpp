#include "rhc/residue.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "rhc/errors.hpp"
#include "rhc/random.hpp"

namespace rhc {

void require_coprime(std::span<const std::int64_t> moduli) {
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (gcd(moduli[i], moduli[j]) != 1) {
        throw ValidationError("moduli " + std::to_string(moduli[i]) + " and " +
                              std::to_string(moduli[j]) + " are not co-prime (gcd " +
                              std::to_string(gcd(moduli[i], moduli[j])) + ")");
      }
    }
  }
}

ResidueSystem::ResidueSystem(std::vector<std::int64_t> moduli, std::size_t dim,
                             std::uint64_t seed, bool nonzero_only)
    : moduli_(std::move(moduli)), dim_(dim), nonzero_only_(nonzero_only) {
  std::vector<std::uint64_t> seeds(moduli_.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) seeds[k] = derive_seed(seed, k);
  validate_and_build(seeds);
}

ResidueSystem::ResidueSystem(std::vector<std::int64_t> moduli, std::size_t dim,
                             std::vector<std::uint64_t> base_seeds, bool nonzero_only)
    : moduli_(std::move(moduli)), dim_(dim), nonzero_only_(nonzero_only) {
  if (base_seeds.size() != moduli_.size()) {
    throw ValidationError("need one seed per modulus");
  }
  validate_and_build(base_seeds);
}

ResidueSystem::ResidueSystem(std::vector<ModulusBase> bases) {
  if (bases.empty()) throw ParameterError("a residue system needs at least one modulus");
  dim_ = bases.front().dim;
  nonzero_only_ = bases.front().nonzero_only;
  for (const auto& b : bases) {
    if (b.dim != dim_) throw ValidationError("bases differ in dimension");
    if (b.nonzero_only != nonzero_only_) throw ValidationError("bases differ in nonzero_only");
    validate(b);
    moduli_.push_back(b.modulus);
  }
  validate_moduli();
  bases_ = std::move(bases);
}

void ResidueSystem::validate_and_build(std::span<const std::uint64_t> base_seeds) {
  validate_moduli();
  bases_.reserve(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    bases_.push_back(sample_base(moduli_[k], dim_, base_seeds[k], nonzero_only_));
  }
}

void ResidueSystem::validate_moduli() {
  if (moduli_.empty()) throw ParameterError("a residue system needs at least one modulus");
  for (auto m : moduli_) {
    if (m < 2) throw ParameterError("modulus must be >= 2, got " + std::to_string(m));
  }
  require_coprime(moduli_);

  __int128 range = 1;
  for (auto m : moduli_) {
    range *= m;
    if (range > std::numeric_limits<std::int64_t>::max()) {
      throw ParameterError("range M overflows 64 bits");
    }
    budget_ += m;
  }
  range_ = static_cast<std::int64_t>(range);
}

std::vector<std::uint64_t> ResidueSystem::base_seeds() const {
  std::vector<std::uint64_t> out;
  out.reserve(bases_.size());
  for (const auto& b : bases_) out.push_back(b.seed);
  return out;
}

ExactVector encode(const ResidueSystem& sys, std::int64_t x) {
  const std::int64_t big_m = sys.range();
  std::vector<std::int64_t> idx(sys.dim(), 0);
  for (const auto& base : sys.bases()) {
    const std::int64_t m = base.modulus;
    const std::int64_t scale = big_m / m;
    const std::int64_t xr = mod(x, m);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::int64_t r = mulmod(base.phase_indices[j], xr, m);
      idx[j] = (idx[j] + mulmod(r, scale, big_m)) % big_m;
    }
  }
  return ExactVector(big_m, std::move(idx));
}

std::vector<ExactVector> encode_factors(const ResidueSystem& sys, std::int64_t x) {
  std::vector<ExactVector> out;
  out.reserve(sys.num_moduli());
  for (const auto& base : sys.bases()) out.push_back(encode_integer(base, x));
  return out;
}

DenseVector encode_rational(const ResidueSystem& sys, double q) {
  DenseVector out(sys.dim(), Complex{1.0, 0.0});
  for (const auto& base : sys.bases()) {
    const DenseVector part = encode_rational(base, q);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= part[j];
  }
  return out;
}

namespace {

void require_system_vector(const ResidueSystem& sys, const ExactVector& v) {
  if (v.dim() != sys.dim()) {
    throw DimensionMismatch("vector dim " + std::to_string(v.dim()) + " vs system dim " +
                            std::to_string(sys.dim()));
  }
}

}  // namespace

ExactVector add(const ResidueSystem& sys, const ExactVector& a, const ExactVector& b) {
  require_system_vector(sys, a);
  require_system_vector(sys, b);
  return hadamard(a, b).with_period(sys.range());
}

ExactVector subtract(const ResidueSystem& sys, const ExactVector& a, const ExactVector& b) {
  require_system_vector(sys, a);
  require_system_vector(sys, b);
  return hadamard(a, conjugate(b)).with_period(sys.range());
}

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  // Extended Euclid.
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) {
    throw ParameterError(std::to_string(a) + " has no inverse modulo " + std::to_string(m));
  }
  return mod(old_s, m);
}

AntiBase anti_base(const ModulusBase& base) {
  if (!is_prime(base.modulus)) {
    throw UnsupportedOperation("anti-base requires a prime modulus, got " +
                               std::to_string(base.modulus));
  }
  AntiBase out{base.modulus, std::vector<std::int64_t>(base.dim)};
  for (std::size_t j = 0; j < base.dim; ++j) {
    const std::int64_t u = mod(base.phase_indices[j], base.modulus);
    if (u == 0) {
      throw ParameterError("anti-base undefined: phase index " + std::to_string(j) +
                           " is zero (sample the base with nonzero_only)");
    }
    out.inverse_indices[j] = mod_inverse(u, base.modulus);
  }
  return out;
}

ExactVector f_op(const ExactVector& a, const ExactVector& b, std::int64_t m) {
  if (a.period() != m || b.period() != m) {
    throw DimensionMismatch("f_op needs both operands with period " + std::to_string(m));
  }
  if (a.dim() != b.dim()) throw DimensionMismatch("f_op dimension mismatch");
  std::vector<std::int64_t> idx(a.dim());
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = mulmod(a[j], b[j], m);
  return ExactVector(m, std::move(idx));
}

PhaseProductTable::PhaseProductTable(std::int64_t m)
    : m_(m), table_(static_cast<std::size_t>(m * m)), inverses_(static_cast<std::size_t>(m), 0) {
  if (!is_prime(m)) throw UnsupportedOperation("product table requires a prime modulus");
  for (std::int64_t r = 0; r < m; ++r) {
    for (std::int64_t s = 0; s < m; ++s) {
      table_[static_cast<std::size_t>(r * m + s)] = (r * s) % m;
      if ((r * s) % m == 1) inverses_[static_cast<std::size_t>(r)] = s;
    }
  }
}

std::int64_t PhaseProductTable::inverse(std::int64_t u) const {
  if (u <= 0 || u >= m_) throw ParameterError("no inverse for " + std::to_string(u));
  return inverses_[static_cast<std::size_t>(u)];
}

ExactVector PhaseProductTable::apply(const ExactVector& a, const ExactVector& b) const {
  if (a.period() != m_ || b.period() != m_ || a.dim() != b.dim()) {
    throw DimensionMismatch("product table operands must have period " + std::to_string(m_));
  }
  std::vector<std::int64_t> idx(a.dim());
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = product(a[j], b[j]);
  return ExactVector(m_, std::move(idx));
}

namespace {

void require_multiplicative(const ResidueSystem& sys, std::span<const ExactVector> a,
                            std::span<const ExactVector> b) {
  for (auto m : sys.moduli()) {
    if (!is_prime(m)) {
      throw UnsupportedOperation("multiplicative binding requires prime moduli; " +
                                 std::to_string(m) + " is composite");
    }
  }
  if (a.size() != sys.num_moduli() || b.size() != sys.num_moduli()) {
    throw DimensionMismatch("expected one factor per modulus");
  }
}

template <typename Mul>
ExactVector multiply_with(const ResidueSystem& sys, std::span<const ExactVector> a,
                          std::span<const ExactVector> b, Mul&& mul) {
  require_multiplicative(sys, a, b);
  ExactVector out = identity(sys.dim()).with_period(sys.range());
  for (std::size_t k = 0; k < sys.num_moduli(); ++k) {
    const std::int64_t m = sys.moduli()[k];
    const AntiBase anti = anti_base(sys.base(k));
    const ExactVector y(m, anti.inverse_indices);
    out = hadamard(out, mul(mul(a[k], b[k], m), y, m));
  }
  return out.with_period(sys.range());
}

}  // namespace

ExactVector multiply(const ResidueSystem& sys, std::span<const ExactVector> a_factors,
                     std::span<const ExactVector> b_factors) {
  return multiply_with(sys, a_factors, b_factors,
                       [](const ExactVector& x, const ExactVector& y, std::int64_t m) {
                         return f_op(x, y, m);
                       });
}

ExactVector multiply_tabulated(const ResidueSystem& sys, std::span<const ExactVector> a_factors,
                               std::span<const ExactVector> b_factors) {
  std::vector<PhaseProductTable> tables;
  for (auto m : sys.moduli()) {
    if (!is_prime(m)) break;  // require_multiplicative reports it
    tables.emplace_back(m);
  }
  return multiply_with(sys, a_factors, b_factors,
                       [&](const ExactVector& x, const ExactVector& y, std::int64_t m) {
                         for (const auto& t : tables) {
                           if (t.modulus() == m) return t.apply(x, y);
                         }
                         throw UnsupportedOperation("no table for modulus " + std::to_string(m));
                       });
}

ExactVector multiply_by_constant_inverse(const ResidueSystem& sys,
                                         std::span<const ExactVector> factors, std::int64_t c) {
  if (factors.size() != sys.num_moduli()) throw DimensionMismatch("expected one factor per modulus");
  ExactVector out = identity(sys.dim()).with_period(sys.range());
  for (std::size_t k = 0; k < sys.num_moduli(); ++k) {
    const std::int64_t m = sys.moduli()[k];
    if (!is_prime(m)) {
      throw UnsupportedOperation("constant inverse requires prime moduli; " + std::to_string(m) +
                                 " is composite");
    }
    if (mod(c, m) == 0) {
      throw UnsupportedOperation(std::to_string(c) + " is not invertible modulo " +
                                 std::to_string(m));
    }
    const std::int64_t inv = mod_inverse(c, m);
    const auto& f = factors[k];
    if (f.period() != m) throw DimensionMismatch("factor period mismatch");
    std::vector<std::int64_t> idx(f.dim());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = mulmod(f[j], inv, m);
    out = hadamard(out, ExactVector(m, std::move(idx)));
  }
  return out.with_period(sys.range());
}

std::vector<ExactVector> split_factors(const ResidueSystem& sys, const ExactVector& v) {
  require_system_vector(sys, v);
  const ExactVector full = v.with_period(sys.range());
  std::vector<ExactVector> out;
  for (auto m : sys.moduli()) {
    const std::int64_t cofactor = sys.range() / m;
    const std::int64_t inv = mod_inverse(cofactor % m, m);
    std::vector<std::int64_t> idx(v.dim());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = mulmod(full[j] % m, inv, m);
    out.emplace_back(m, std::move(idx));
  }
  return out;
}

std::vector<std::int64_t> to_residues(std::int64_t x, std::span<const std::int64_t> moduli) {
  std::vector<std::int64_t> out;
  out.reserve(moduli.size());
  for (auto m : moduli) out.push_back(mod(x, m));
  return out;
}

std::int64_t crt_reconstruct(std::span<const std::int64_t> residues,
                             std::span<const std::int64_t> moduli) {
  if (residues.size() != moduli.size()) {
    throw DimensionMismatch("need one residue per modulus");
  }
  require_coprime(moduli);
  // Incremental (Garner-style) combination keeps every intermediate below M.
  std::int64_t x = 0;
  std::int64_t step = 1;
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    const std::int64_t m = moduli[k];
    if (residues[k] < 0 || residues[k] >= m) {
      throw ParameterError("residue " + std::to_string(residues[k]) + " out of range for modulus " +
                           std::to_string(m));
    }
    // Solve x + step * t = r (mod m).
    const std::int64_t t =
        mulmod(mod(residues[k] - x, m), mod_inverse(step % m, m), m);
    x += step * t;
    step *= m;
  }
  return x;
}

std::int64_t landau_g(int b) {
  if (b < 1) throw ParameterError("landau_g needs b >= 1");
  if (b > kLandauMax) {
    throw ParameterError("landau_g uses exact enumeration and is limited to b <= " +
                         std::to_string(kLandauMax));
  }
  std::int64_t best = 1;
  // Enumerate partitions with non-increasing parts, tracking the running lcm.
  std::function<void(int, int, std::int64_t)> visit = [&](int remaining, int max_part,
                                                          std::int64_t l) {
    if (remaining == 0) {
      best = std::max(best, l);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      visit(remaining - part, part, lcm(l, part));
    }
  };
  visit(b, b, 1);
  return best;
}

std::vector<std::int64_t> first_primes(std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; out.size() < count; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

}  // namespace rhc
