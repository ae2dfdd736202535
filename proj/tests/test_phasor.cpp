#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rhc/errors.hpp"
#include "rhc/phasor.hpp"
#include "rhc/random.hpp"

namespace {

using namespace rhc;

// Modified Bessel ratio I1/I0 by trapezoid quadrature of the defining
// integrals; independent of the library's closed forms.
double bessel_ratio(double kappa) {
  constexpr int n = 20000;
  double i0 = 0.0, i1 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = std::numbers::pi * (k + 0.5) / n;
    const double w = std::exp(kappa * (std::cos(t) - 1.0));
    i0 += w;
    i1 += w * std::cos(t);
  }
  return i1 / i0;
}

TEST(Base, PhaseIndicesAreUniform) {
  // Chi-square goodness of fit; 6 degrees of freedom, 0.1% critical value.
  constexpr std::int64_t m = 7;
  const auto base = sample_base(m, 70000, 11);
  std::vector<double> counts(m, 0.0);
  for (auto u : base.phase_indices) counts[static_cast<std::size_t>(u)] += 1.0;
  const double expected = 70000.0 / m;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);
}

TEST(Base, NonzeroOnlyExcludesZero) {
  const auto base = sample_base(5, 5000, 3, true);
  for (auto u : base.phase_indices) {
    EXPECT_GT(u, 0);
    EXPECT_LT(u, 5);
  }
}

TEST(Base, SameSeedSameBase) {
  EXPECT_EQ(sample_base(11, 300, 42), sample_base(11, 300, 42));
  EXPECT_NE(sample_base(11, 300, 42), sample_base(11, 300, 43));
}

TEST(Base, ValidateRejectsMalformed) {
  auto base = sample_base(5, 16, 1);
  EXPECT_NO_THROW(validate(base));
  auto bad = base;
  bad.phase_indices[3] = 5;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = base;
  bad.phase_indices.pop_back();
  EXPECT_THROW(validate(bad), ValidationError);
  bad = base;
  bad.modulus = 1;
  EXPECT_THROW(validate(bad), ValidationError);
}

TEST(Encoding, IntegerEncodingIsPeriodic) {
  const auto base = sample_base(9, 128, 5);
  for (std::int64_t x = -20; x < 20; ++x) {
    EXPECT_EQ(encode_integer(base, x), encode_integer(base, x + 9));
  }
}

TEST(Encoding, BindingAddsAndConjugateNegates) {
  const auto base = sample_base(13, 64, 8);
  for (std::int64_t a = 0; a < 13; ++a) {
    for (std::int64_t b = 0; b < 13; ++b) {
      EXPECT_EQ(hadamard(encode_integer(base, a), encode_integer(base, b)), encode_integer(base, a + b));
    }
    EXPECT_EQ(conjugate(encode_integer(base, a)), encode_integer(base, -a));
  }
}

TEST(Encoding, RationalEncodingAgreesOnIntegers) {
  const auto base = sample_base(6, 256, 2);
  for (std::int64_t x = -7; x <= 7; ++x) {
    const auto exact = to_dense(encode_integer(base, x));
    const auto fpe = encode_rational(base, static_cast<double>(x));
    for (std::size_t j = 0; j < exact.size(); ++j) EXPECT_NEAR(std::abs(exact[j] - fpe[j]), 0.0, 1e-12);
  }
}

TEST(Encoding, SimilarityOfDistinctResiduesIsSmall) {
  const auto base = sample_base(17, 4096, 4);
  EXPECT_DOUBLE_EQ(similarity(encode_integer(base, 3), encode_integer(base, 3)), 1.0);
  EXPECT_LT(std::abs(similarity(encode_integer(base, 3), encode_integer(base, 4))), 0.08);
}

TEST(Encoding, PhaseNormalizeGivesUnitPhasors) {
  DenseVector v{{3.0, 4.0}, {0.0, 0.0}, {-2.0, 0.0}};
  const auto g = phase_normalize(v);
  EXPECT_NEAR(std::abs(g[0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(g[2] - Complex(-1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g[1]), 1.0, 1e-15);
}

class VonMises : public ::testing::TestWithParam<double> {};

TEST_P(VonMises, MeanResultantLengthMatchesBesselRatio) {
  const double kappa = GetParam();
  Rng rng(derive_seed(99, static_cast<std::uint64_t>(kappa * 100)));
  constexpr int n = 200000;
  double c = 0.0, s = 0.0, c2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = rng.von_mises(kappa);
    ASSERT_GE(t, -std::numbers::pi);
    ASSERT_LE(t, std::numbers::pi);
    c += std::cos(t);
    c2 += std::cos(t) * std::cos(t);
    s += std::sin(t);
  }
  const double mean = c / n;
  const double se = std::sqrt((c2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, bessel_ratio(kappa), 5.0 * se);
  EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
}

INSTANTIATE_TEST_SUITE_P(Concentrations, VonMises, ::testing::Values(0.25, 1.0, 4.0, 16.0, 64.0));

TEST(Noise, NoisySimilarityMatchesBesselRatio) {
  const auto base = sample_base(31, 50000, 1);
  const auto clean = to_dense(encode_integer(base, 5));
  for (double kappa : {1.0, 4.0}) {
    const auto noisy = add_phase_noise(clean, NoiseModel{kappa, 7});
    EXPECT_NEAR(similarity(clean, noisy), bessel_ratio(kappa), 0.02);
    for (const auto& z : noisy) ASSERT_NEAR(std::abs(z), 1.0, 1e-12);
  }
  EXPECT_EQ(add_phase_noise(clean, NoiseModel{}), clean);
}

TEST(Arithmetic, ModHelpers) {
  EXPECT_EQ(mod(-1, 7), 6);
  EXPECT_EQ(mod(14, 7), 0);
  EXPECT_EQ(mulmod(1'000'000'007, 1'000'000'009, 998244353),
            static_cast<std::int64_t>((static_cast<__int128>(1'000'000'007) * 1'000'000'009) % 998244353));
  EXPECT_EQ(gcd(12, 18), 6);
  EXPECT_EQ(lcm(4, 6), 12);
  for (std::int64_t m : {5, 6}) {
    for (std::int64_t u = -20; u <= 20; ++u) {
      const auto c = centered_residue(u, m);
      EXPECT_GT(2 * c, -m);
      EXPECT_LE(2 * c, m);
      EXPECT_EQ(mod(c - u, m), 0);
    }
  }
}

}  // namespace
