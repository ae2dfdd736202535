#pragma once

// Seeded randomness shared by every module.
//
// All draws are built directly on the bit stream of std::mt19937_64, whose
// output sequence is fixed by the standard. The distribution adaptors below
// are written out by hand because the std:: distributions are allowed to
// differ between standard library implementations.

#include <cstdint>
#include <random>

namespace rhc {

// Mixes a parent seed with a stream index (splitmix64 finalizer). Used to
// give every base, trial and restart its own independent, replayable seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  // Uniform integer on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform phase on [-pi, pi).
  double phase();

  // Von Mises(0, kappa) angle in (-pi, pi]. kappa == 0 gives a uniform angle.
  // Best & Fisher (1979) rejection sampler.
  double von_mises(double kappa);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rhc
