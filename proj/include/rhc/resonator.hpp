#pragma once

// Resonator-network factorization and the decoders built on it.
//
// Given v = z_1 (.) z_2 (.) ... (.) z_K with each z_j drawn from codebook Z_j,
// the network updates one factor at a time,
//
//   z_j <- g( Z_j Z_j^dagger ( v (.) prod_{i != j} conj(z_i) ) ),
//
// where g divides every component by its magnitude. A sweep updates every
// factor once; the run stops when the normalized inner product between the
// states before and after a sweep reaches alpha.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rhc/codebook.hpp"
#include "rhc/phasor.hpp"
#include "rhc/residue.hpp"

namespace rhc {

enum class InitMode {
  kSuperposition,  // g(sum of all codebook entries) per factor
  kRandom,         // i.i.d. uniform phases
};

struct ResonatorConfig {
  double alpha = 0.95;
  int max_iters = 100;  // sweeps per attempt
  int max_restarts = 0;
  // The superposition of a complete residue codebook cancels to the identity
  // vector, so random phases are the default start.
  InitMode init = InitMode::kRandom;
  // A converged state whose clean product has similarity below this with the
  // input is treated as a spurious fixed point and restarted.
  double verify_threshold = 0.5;
  // With an acceptance test, evaluate it after every sweep and stop as soon
  // as it passes; an accepted state counts as solved even if not yet settled.
  bool accept_each_sweep = false;
  std::uint64_t seed = 0;
};

void validate(const ResonatorConfig& config);

struct ResonatorState {
  std::vector<DenseVector> estimates;
  // Projection coefficients from each factor's most recent update.
  std::vector<std::vector<Complex>> coefficients;
  int iteration = 0;  // completed sweeps
  bool converged = false;
  std::uint64_t codebook_evaluations = 0;
};

ResonatorState initial_state(std::span<const Codebook> codebooks, InitMode mode,
                             std::uint64_t seed);

// One asynchronous update of factor j. Adds |Z_j| to codebook_evaluations.
void resonator_step(std::span<const Complex> v, ResonatorState& state,
                    std::span<const Codebook> codebooks, std::size_t j);

// Entry index per factor, by largest coefficient magnitude (factors settle
// up to a global phase, so the real part alone can mislead).
std::vector<std::size_t> read_out(const ResonatorState& state, std::span<const Codebook> codebooks);

// Optional acceptance test on decoded entry indices (e.g. an exact subset
// sum check). When present it replaces the similarity verification.
using AcceptFn = std::function<bool(std::span<const std::size_t> indices)>;

struct FactorizeResult {
  bool success = false;
  std::vector<std::size_t> indices;  // selected entry per factor
  std::vector<std::int64_t> labels;
  ResonatorState state;              // final state of the reported attempt
  double verification = 0.0;         // similarity(v, product of selected entries)
  int attempts = 0;
  std::uint64_t total_evaluations = 0;  // summed over attempts
  std::vector<bool> attempt_success;    // per attempt, in order
};

FactorizeResult resonator_factorize(std::span<const Complex> v,
                                    std::span<const Codebook> codebooks,
                                    const ResonatorConfig& config,
                                    const AcceptFn& accept = nullptr);

// Index of the entry with the largest real inner product; ties go to the
// lowest label. Adds |codebook| to *evaluations when given.
std::size_t codebook_argmax(std::span<const Complex> v, const Codebook& codebook,
                            std::uint64_t* evaluations = nullptr);
std::int64_t codebook_decode(std::span<const Complex> v, const Codebook& codebook,
                             std::uint64_t* evaluations = nullptr);

// Codebook k holds z_{m_k}(0), ..., z_{m_k}(m_k - 1), labeled by residue.
std::vector<Codebook> build_residue_codebooks(const ResidueSystem& sys);

// Full M-entry codebook of composed encodings (brute-force baseline).
Codebook build_full_codebook(const ResidueSystem& sys);

struct DecodeResult {
  bool success = false;
  std::int64_t value = 0;  // in [0, M)
  std::vector<std::int64_t> residues;
  std::uint64_t evaluations = 0;
  int attempts = 0;
  double verification = 0.0;
};

DecodeResult decode_residue_number(const ResidueSystem& sys, std::span<const Codebook> codebooks,
                                   std::span<const Complex> v, const ResonatorConfig& config);
DecodeResult decode_residue_number(const ResidueSystem& sys, std::span<const Complex> v,
                                   const ResonatorConfig& config);

struct SubIntegerResult {
  bool success = false;
  double value = 0.0;           // integer_part + offset / partitions
  std::int64_t integer_part = 0;  // in [0, M)
  std::int64_t offset = 0;      // numerator in [0, partitions)
  std::uint64_t evaluations = 0;
  std::size_t candidates = 0;
};

// Three steps: run the resonator to a fixed point; take the nearest integer
// entry per modulus and form every rational with denominator `partitions`
// lying within distance 1 of it; codebook-decode the input against those
// rational encodings.
SubIntegerResult sub_integer_decode(const ResidueSystem& sys, std::span<const Codebook> codebooks,
                                    std::span<const Complex> v, int partitions,
                                    const ResonatorConfig& config);

// Information decoded per vector for accuracy a over P equiprobable states:
//   a log2(P a) + (1 - a) log2(P (1 - a) / (P - 1)).
double bits_per_vector(double accuracy, double search_space);

// x1 * x2 from two composed dense vectors: the resonator recovers each
// operand's residues, then the exact multiplicative binding is applied.
// Returns nullopt when either factorization fails.
std::optional<ExactVector> multiply_composed(const ResidueSystem& sys, std::span<const Complex> a,
                                             std::span<const Complex> b,
                                             const ResonatorConfig& config);

}  // namespace rhc
