#include "rhc/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rhc/errors.hpp"
#include "rhc/kernels.hpp"
#include "rhc/random.hpp"

namespace rhc {

void validate(const ResonatorConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    throw ParameterError("resonator alpha must lie in (0, 1]");
  }
  if (config.max_iters < 1) throw ParameterError("resonator max_iters must be >= 1");
  if (config.max_restarts < 0) throw ParameterError("resonator max_restarts must be >= 0");
}

namespace {

void require_codebooks(std::span<const Codebook> codebooks, std::size_t dim) {
  if (codebooks.empty()) throw ParameterError("resonator needs at least one codebook");
  for (const auto& cb : codebooks) {
    if (cb.dim() != dim) {
      throw DimensionMismatch("codebook dim " + std::to_string(cb.dim()) + " vs input dim " +
                              std::to_string(dim));
    }
  }
}

std::size_t argmax_real(std::span<const Complex> coeffs, std::span<const std::int64_t> labels) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    const double a = coeffs[k].real();
    const double b = coeffs[best].real();
    if (a > b || (a == b && labels[k] < labels[best])) best = k;
  }
  return best;
}

// Factor estimates carry an arbitrary per-factor phase (only their product is
// pinned by the input), so resonator read-out ranks coefficients by modulus.
std::size_t argmax_abs(std::span<const Complex> coeffs, std::span<const std::int64_t> labels) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    const double a = std::norm(coeffs[k]);
    const double b = std::norm(coeffs[best]);
    if (a > b || (a == b && labels[k] < labels[best])) best = k;
  }
  return best;
}

// Normalized inner product between two full states.
double state_similarity(const std::vector<DenseVector>& a, const std::vector<DenseVector>& b) {
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    acc += similarity(a[j], b[j]) * static_cast<double>(a[j].size());
    n += a[j].size();
  }
  return acc / static_cast<double>(n);
}

DenseVector product_of_entries(std::span<const Codebook> codebooks,
                               std::span<const std::size_t> indices) {
  const std::size_t dim = codebooks.front().dim();
  DenseVector out(dim, Complex{1.0, 0.0});
  for (std::size_t j = 0; j < codebooks.size(); ++j) {
    const double* re = codebooks[j].re_row(indices[j]);
    const double* im = codebooks[j].im_row(indices[j]);
    for (std::size_t d = 0; d < dim; ++d) out[d] *= Complex{re[d], im[d]};
  }
  return out;
}

}  // namespace

ResonatorState initial_state(std::span<const Codebook> codebooks, InitMode mode,
                             std::uint64_t seed) {
  ResonatorState state;
  state.estimates.reserve(codebooks.size());
  state.coefficients.resize(codebooks.size());
  Rng rng(seed);
  for (std::size_t j = 0; j < codebooks.size(); ++j) {
    const auto& cb = codebooks[j];
    state.coefficients[j].assign(cb.size(), Complex{});
    DenseVector est(cb.dim());
    if (mode == InitMode::kRandom) {
      for (auto& z : est) {
        const double p = rng.phase();
        z = {std::cos(p), std::sin(p)};
      }
    } else {
      DenseVector sum(cb.dim(), Complex{});
      for (std::size_t k = 0; k < cb.size(); ++k) {
        for (std::size_t d = 0; d < cb.dim(); ++d) sum[d] += Complex{cb.re_row(k)[d], cb.im_row(k)[d]};
      }
      // Sums of complete sets of roots of unity cancel to rounding noise;
      // those components start at 1 instead of an arbitrary phase.
      est = phase_normalize(sum, 1e-8 * static_cast<double>(cb.size()));
    }
    state.estimates.push_back(std::move(est));
  }
  return state;
}

void resonator_step(std::span<const Complex> v, ResonatorState& state,
                    std::span<const Codebook> codebooks, std::size_t j) {
  if (j >= codebooks.size() || j >= state.estimates.size()) {
    throw ParameterError("factor index " + std::to_string(j) + " out of range");
  }
  require_codebooks(codebooks, v.size());
  DenseVector residual(v.begin(), v.end());
  for (std::size_t i = 0; i < state.estimates.size(); ++i) {
    if (i == j) continue;
    const auto& est = state.estimates[i];
    if (est.size() != v.size()) throw DimensionMismatch("estimate dim mismatch");
    for (std::size_t d = 0; d < residual.size(); ++d) residual[d] *= std::conj(est[d]);
  }
  const Codebook& cb = codebooks[j];
  auto& coeffs = state.coefficients[j];
  coeffs.resize(cb.size());
  DenseVector out(cb.dim());
  kernels::project(cb, residual, coeffs, out);
  state.estimates[j] = phase_normalize(out);
  state.codebook_evaluations += cb.size();
}

std::vector<std::size_t> read_out(const ResonatorState& state,
                                  std::span<const Codebook> codebooks) {
  std::vector<std::size_t> indices(codebooks.size());
  for (std::size_t j = 0; j < codebooks.size(); ++j) {
    indices[j] = argmax_abs(state.coefficients[j], codebooks[j].labels());
  }
  return indices;
}

FactorizeResult resonator_factorize(std::span<const Complex> v,
                                    std::span<const Codebook> codebooks,
                                    const ResonatorConfig& config, const AcceptFn& accept) {
  validate(config);
  require_codebooks(codebooks, v.size());
  const std::size_t factors = codebooks.size();

  FactorizeResult best;
  best.verification = -2.0;
  std::uint64_t total = 0;
  const int attempts = 1 + config.max_restarts;
  std::vector<bool> history;

  for (int attempt = 0; attempt < attempts; ++attempt) {
    const InitMode mode = attempt == 0 ? config.init : InitMode::kRandom;
    ResonatorState state = initial_state(codebooks, mode, derive_seed(config.seed, attempt));

    for (int it = 0; it < config.max_iters && !state.converged; ++it) {
      const std::vector<DenseVector> previous = state.estimates;
      for (std::size_t j = 0; j < factors; ++j) resonator_step(v, state, codebooks, j);
      ++state.iteration;
      state.converged = state_similarity(previous, state.estimates) >= config.alpha;
      if (config.accept_each_sweep && accept && !state.converged &&
          accept(read_out(state, codebooks))) {
        break;
      }
    }
    total += state.codebook_evaluations;

    FactorizeResult result;
    result.indices = read_out(state, codebooks);
    result.labels.resize(factors);
    for (std::size_t j = 0; j < factors; ++j) result.labels[j] = codebooks[j].label(result.indices[j]);
    result.verification = similarity(v, product_of_entries(codebooks, result.indices));
    const bool verified =
        accept ? accept(result.indices) : result.verification >= config.verify_threshold;
    result.success = (state.converged || (config.accept_each_sweep && accept)) && verified;
    result.state = std::move(state);
    history.push_back(result.success);

    const bool better = result.success || result.verification > best.verification;
    if (better) best = std::move(result);
    if (best.success) break;
  }

  best.attempts = static_cast<int>(history.size());
  best.total_evaluations = total;
  best.attempt_success = std::move(history);
  return best;
}

std::size_t codebook_argmax(std::span<const Complex> v, const Codebook& codebook,
                            std::uint64_t* evaluations) {
  std::vector<Complex> coeffs(codebook.size());
  kernels::coefficients(codebook, v, coeffs);
  if (evaluations != nullptr) *evaluations += codebook.size();
  return argmax_real(coeffs, codebook.labels());
}

std::int64_t codebook_decode(std::span<const Complex> v, const Codebook& codebook,
                             std::uint64_t* evaluations) {
  return codebook.label(codebook_argmax(v, codebook, evaluations));
}

std::vector<Codebook> build_residue_codebooks(const ResidueSystem& sys) {
  std::vector<Codebook> out;
  out.reserve(sys.num_moduli());
  for (const auto& base : sys.bases()) {
    std::vector<std::int64_t> labels(static_cast<std::size_t>(base.modulus));
    std::vector<ExactVector> entries;
    entries.reserve(labels.size());
    for (std::int64_t r = 0; r < base.modulus; ++r) {
      labels[static_cast<std::size_t>(r)] = r;
      entries.push_back(encode_integer(base, r));
    }
    out.push_back(Codebook::from_exact(std::move(labels), entries));
  }
  return out;
}

Codebook build_full_codebook(const ResidueSystem& sys) {
  std::vector<std::int64_t> labels(static_cast<std::size_t>(sys.range()));
  std::vector<DenseVector> entries;
  entries.reserve(labels.size());
  for (std::int64_t x = 0; x < sys.range(); ++x) {
    labels[static_cast<std::size_t>(x)] = x;
    entries.push_back(to_dense(encode(sys, x)));
  }
  return Codebook(std::move(labels), entries);
}

DecodeResult decode_residue_number(const ResidueSystem& sys, std::span<const Codebook> codebooks,
                                   std::span<const Complex> v, const ResonatorConfig& config) {
  if (codebooks.size() != sys.num_moduli()) {
    throw DimensionMismatch("need one codebook per modulus");
  }
  const FactorizeResult f = resonator_factorize(v, codebooks, config);
  DecodeResult out;
  out.success = f.success;
  out.residues = f.labels;
  out.value = crt_reconstruct(f.labels, sys.moduli());
  out.evaluations = f.total_evaluations;
  out.attempts = f.attempts;
  out.verification = f.verification;
  return out;
}

DecodeResult decode_residue_number(const ResidueSystem& sys, std::span<const Complex> v,
                                   const ResonatorConfig& config) {
  const auto codebooks = build_residue_codebooks(sys);
  return decode_residue_number(sys, codebooks, v, config);
}

SubIntegerResult sub_integer_decode(const ResidueSystem& sys, std::span<const Codebook> codebooks,
                                    std::span<const Complex> v, int partitions,
                                    const ResonatorConfig& config) {
  if (partitions < 1) throw ParameterError("sub-integer decoding needs partitions >= 1");
  if (codebooks.size() != sys.num_moduli()) {
    throw DimensionMismatch("need one codebook per modulus");
  }
  // Rational inputs are not close to any single integer product, so the
  // integer similarity check does not apply; convergence alone is required.
  const FactorizeResult f =
      resonator_factorize(v, codebooks, config, [](std::span<const std::size_t>) { return true; });

  const auto moduli = sys.moduli();
  const std::size_t k_count = moduli.size();
  SubIntegerResult out;
  out.success = f.success;
  out.evaluations = f.total_evaluations;

  // Every candidate n + k/r with n within distance 1 of the per-modulus
  // nearest integers: for k > 0 each modulus may sit on either side.
  double best_sim = -2.0;
  std::vector<std::int64_t> residues(k_count);
  for (std::int64_t k = 0; k < partitions; ++k) {
    const std::uint64_t masks = k == 0 ? 1 : (std::uint64_t{1} << k_count);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      for (std::size_t i = 0; i < k_count; ++i) {
        residues[i] = mod(f.labels[i] - static_cast<std::int64_t>((mask >> i) & 1U), moduli[i]);
      }
      const std::int64_t n = crt_reconstruct(residues, moduli);
      const double q = static_cast<double>(n) + static_cast<double>(k) / partitions;
      const double sim = similarity(v, encode_rational(sys, q));
      ++out.candidates;
      if (sim > best_sim) {
        best_sim = sim;
        out.integer_part = n;
        out.offset = k;
        out.value = q;
      }
    }
  }
  return out;
}

double bits_per_vector(double accuracy, double search_space) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw ParameterError("accuracy must lie in [0, 1]");
  if (!(search_space >= 2.0)) throw ParameterError("search space must be >= 2");
  const double a = accuracy;
  const double p = search_space;
  double bits = 0.0;
  if (a > 0.0) bits += a * std::log2(p * a);
  if (a < 1.0) bits += (1.0 - a) * std::log2(p / (p - 1.0) * (1.0 - a));
  return bits;
}

std::optional<ExactVector> multiply_composed(const ResidueSystem& sys, std::span<const Complex> a,
                                             std::span<const Complex> b,
                                             const ResonatorConfig& config) {
  const auto codebooks = build_residue_codebooks(sys);
  const DecodeResult da = decode_residue_number(sys, codebooks, a, config);
  const DecodeResult db = decode_residue_number(sys, codebooks, b, config);
  if (!da.success || !db.success) return std::nullopt;
  std::vector<ExactVector> fa, fb;
  for (std::size_t k = 0; k < sys.num_moduli(); ++k) {
    fa.push_back(encode_integer(sys.base(k), da.residues[k]));
    fb.push_back(encode_integer(sys.base(k), db.residues[k]));
  }
  return multiply(sys, fa, fb);
}

}  // namespace rhc
