#include <gtest/gtest.h>

#include <cmath>
#include <omp.h>

#include "rhc/codebook.hpp"
#include "rhc/errors.hpp"
#include "rhc/experiments.hpp"
#include "rhc/kernels.hpp"
#include "rhc/random.hpp"
#include "rhc/resonator.hpp"

namespace {

using namespace rhc;

Codebook random_codebook(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DenseVector> entries(n, DenseVector(dim));
  std::vector<std::int64_t> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(static_cast<std::int64_t>(i));
    for (auto& z : entries[i]) z = std::polar(1.0, rng.phase());
  }
  return Codebook(labels, entries);
}

TEST(Kernels, ParallelProjectionMatchesSerialReference) {
  for (const auto& [n, dim] : {std::pair<std::size_t, std::size_t>{3, 17}, {97, 1024}, {200, 333}}) {
    const Codebook cb = random_codebook(n, dim, n + dim);
    DenseVector residual(dim);
    Rng rng(3);
    for (auto& z : residual) z = std::polar(rng.uniform() + 0.5, rng.phase());
    std::vector<Complex> c_ref(n), c_par(n);
    DenseVector o_ref(dim), o_par(dim);
    kernels::project_reference(cb, residual, c_ref, o_ref);
    for (int threads : {1, 2, 4}) {
      omp_set_num_threads(threads);
      kernels::project(cb, residual, c_par, o_par);
      for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(std::abs(c_ref[i] - c_par[i]), 0.0, 1e-9);
      for (std::size_t j = 0; j < dim; ++j) ASSERT_NEAR(std::abs(o_ref[j] - o_par[j]), 0.0, 1e-9 * n);
    }
  }
}

TEST(Codebook, DecodeFindsExactEntry) {
  const ResidueSystem sys({7, 11}, 256, 4);
  const Codebook full = build_full_codebook(sys);
  ASSERT_EQ(full.size(), 77u);
  for (std::int64_t x = 0; x < 77; ++x) {
    std::uint64_t evals = 0;
    EXPECT_EQ(codebook_decode(to_dense(encode(sys, x)), full, &evals), x);
    EXPECT_EQ(evals, 77u);
  }
}

TEST(Resonator, ConfigValidation) {
  ResonatorConfig c;
  EXPECT_NO_THROW(validate(c));
  c.alpha = 1.5;
  EXPECT_THROW(validate(c), ParameterError);
  c = {};
  c.max_iters = 0;
  EXPECT_THROW(validate(c), ParameterError);
}

TEST(Resonator, DecodesSmallRangeExactly) {
  const ResidueSystem sys({7, 11, 13}, 512, 5);
  const auto cbs = build_residue_codebooks(sys);
  ResonatorConfig rc;
  rc.max_restarts = 3;
  Rng rng(17);
  int correct = 0;
  for (int t = 0; t < 60; ++t) {
    const auto x = static_cast<std::int64_t>(rng.below(1001));
    rc.seed = derive_seed(17, t);
    const auto r = decode_residue_number(sys, cbs, to_dense(encode(sys, x)), rc);
    if (r.value == x) ++correct;
    if (r.success) {
      EXPECT_EQ(r.value, x);
      EXPECT_EQ(r.residues, to_residues(x, sys.moduli()));
    }
  }
  EXPECT_GE(correct, 58);
}

TEST(Resonator, SameSeedSameTrajectory) {
  const ResidueSystem sys({29, 31}, 256, 8);
  const auto cbs = build_residue_codebooks(sys);
  ResonatorConfig rc;
  rc.seed = 44;
  const auto v = to_dense(encode(sys, 600));
  const auto a = resonator_factorize(v, cbs, rc);
  omp_set_num_threads(3);
  const auto b = resonator_factorize(v, cbs, rc);
  omp_set_num_threads(1);
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_EQ(a.total_evaluations, b.total_evaluations);
  EXPECT_EQ(a.state.iteration, b.state.iteration);
}

TEST(Resonator, EvaluationsCountCodebookEntriesTouched) {
  const ResidueSystem sys({5, 7}, 256, 2);
  const auto cbs = build_residue_codebooks(sys);
  ResonatorConfig rc;
  const auto r = resonator_factorize(to_dense(encode(sys, 12)), cbs, rc);
  EXPECT_EQ(r.state.codebook_evaluations, static_cast<std::uint64_t>(r.state.iteration) * 12u);
}

TEST(Resonator, AcceptPredicateRejectsAndRestarts) {
  const ResidueSystem sys({5, 7}, 256, 2);
  const auto cbs = build_residue_codebooks(sys);
  ResonatorConfig rc;
  rc.max_restarts = 2;
  const auto r = resonator_factorize(to_dense(encode(sys, 12)), cbs, rc,
                                     [](std::span<const std::size_t>) { return false; });
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.attempts, 3);
  EXPECT_EQ(r.attempt_success, (std::vector<bool>{false, false, false}));
}

TEST(SubInteger, DecodesFortyPointFour) {
  const ResidueSystem sys({7, 11}, 1024, 40);
  const auto cbs = build_residue_codebooks(sys);
  ResonatorConfig rc;
  rc.max_restarts = 3;
  const auto r = sub_integer_decode(sys, cbs, encode_rational(sys, 40.4), 5, rc);
  EXPECT_EQ(r.integer_part, 40);
  EXPECT_EQ(r.offset, 2);
  EXPECT_NEAR(r.value, 40.4, 1e-12);
}

TEST(BitsPerVector, Limits) {
  EXPECT_NEAR(bits_per_vector(1.0, 1024.0), 10.0, 1e-12);
  EXPECT_NEAR(bits_per_vector(1.0 / 1024.0, 1024.0), 0.0, 1e-12);
  EXPECT_LT(bits_per_vector(0.9, 1024.0), bits_per_vector(0.95, 1024.0));
  EXPECT_THROW(bits_per_vector(1.2, 10.0), ParameterError);
}

TEST(Experiments, ModuliNearTarget) {
  const auto m = moduli_near(1000.0, 2);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[1], m[0] + 2);
  EXPECT_NEAR(std::log(static_cast<double>(m[0] * m[1]) / 1000.0), 0.0, 0.25);
  EXPECT_EQ(consecutive_primes(10, 3), (std::vector<std::int64_t>{11, 13, 17}));
}

TEST(Experiments, NoisySimilarityBound) {
  EXPECT_DOUBLE_EQ(expected_noisy_similarity(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_NEAR(expected_noisy_similarity(1.0), 0.4463899658965345, 1e-9);
  EXPECT_NEAR(expected_noisy_similarity(1000.0), 1.0 - 1.0 / 2000.0, 1e-6);
  const auto rc = noise_adjusted(ResonatorConfig{}, 1.0);
  EXPECT_NEAR(rc.verify_threshold, 0.5 * 0.4463899658965345, 1e-9);
}

}  // namespace
