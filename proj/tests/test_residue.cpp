#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <vector>

#include "rhc/errors.hpp"
#include "rhc/random.hpp"
#include "rhc/residue.hpp"

namespace {

using namespace rhc;

// Largest lcm over integer partitions of b, by exhaustive enumeration.
std::int64_t landau_oracle(int b) {
  std::int64_t best = 1;
  std::function<void(int, int, std::int64_t)> walk = [&](int left, int max_part, std::int64_t l) {
    best = std::max(best, l);
    for (int part = std::min(left, max_part); part >= 2; --part) walk(left - part, part, std::lcm(l, part));
  };
  walk(b, b, 1);
  return best;
}

TEST(ResidueSystem, RangeAndBudget) {
  const ResidueSystem sys({3, 5, 7}, 32, 1);
  EXPECT_EQ(sys.range(), 105);
  EXPECT_EQ(sys.codebook_budget(), 15);
  EXPECT_EQ(sys.num_moduli(), 3u);
}

TEST(ResidueSystem, RejectsNonCoprimeModuli) {
  EXPECT_THROW(ResidueSystem({4, 6}, 16, 1), ValidationError);
  EXPECT_THROW(ResidueSystem({}, 16, 1), ParameterError);
}

TEST(ResidueSystem, ExhaustiveAddition) {
  const ResidueSystem sys({3, 5, 7}, 48, 21);
  std::vector<ExactVector> z;
  for (std::int64_t x = 0; x < 105; ++x) z.push_back(encode(sys, x));
  for (std::int64_t a = 0; a < 105; ++a) {
    for (std::int64_t b = 0; b < 105; ++b) {
      ASSERT_EQ(add(sys, z[a], z[b]), z[(a + b) % 105]) << a << " + " << b;
      ASSERT_EQ(subtract(sys, z[a], z[b]), z[(a - b + 105) % 105]) << a << " - " << b;
    }
  }
}

TEST(ResidueSystem, ExhaustiveMultiplication) {
  const ResidueSystem sys({3, 5, 7}, 48, 22, true);
  std::vector<std::vector<ExactVector>> f;
  std::vector<ExactVector> z;
  for (std::int64_t x = 0; x < 105; ++x) {
    f.push_back(encode_factors(sys, x));
    z.push_back(encode(sys, x));
  }
  for (std::int64_t a = 0; a < 105; ++a) {
    for (std::int64_t b = 0; b < 105; ++b) {
      const auto expected = z[(a * b) % 105];
      ASSERT_EQ(multiply(sys, f[a], f[b]), expected) << a << " * " << b;
      ASSERT_EQ(multiply_tabulated(sys, f[a], f[b]), expected) << a << " * " << b;
    }
  }
}

TEST(ResidueSystem, MultiplicationNeedsPrimesAndNonzeroBases) {
  const ResidueSystem composite({4, 9}, 16, 1, true);
  const auto a = encode_factors(composite, 2);
  EXPECT_THROW(multiply(composite, a, a), UnsupportedOperation);
  const ResidueSystem zeros({3, 5}, 4096, 1, false);
  const auto b = encode_factors(zeros, 2);
  EXPECT_THROW(multiply(zeros, b, b), ParameterError);
}

TEST(ResidueSystem, SplitFactorsInvertsComposition) {
  const ResidueSystem sys({5, 7, 11}, 64, 9);
  for (std::int64_t x : {0, 1, 17, 384}) {
    EXPECT_EQ(split_factors(sys, encode(sys, x)), encode_factors(sys, x));
  }
}

TEST(ResidueSystem, ConstantInverseUndoesMultiplication) {
  const ResidueSystem sys({5, 7, 11}, 64, 10, true);
  const std::int64_t c = 3;
  for (std::int64_t x = 0; x < 385; x += 7) {
    const auto product = multiply(sys, encode_factors(sys, x), encode_factors(sys, c));
    EXPECT_EQ(multiply_by_constant_inverse(sys, split_factors(sys, product), c), encode(sys, x));
  }
}

TEST(Crt, ReconstructsEveryValue) {
  const std::vector<std::int64_t> moduli{4, 9, 25, 7};
  const std::int64_t range = 4 * 9 * 25 * 7;
  for (std::int64_t x = 0; x < range; ++x) {
    ASSERT_EQ(crt_reconstruct(to_residues(x, moduli), moduli), x);
  }
}

TEST(Crt, LargeModuliDoNotOverflow) {
  const std::vector<std::int64_t> moduli{1'000'003, 1'000'033, 1'000'037};
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto x = static_cast<std::int64_t>(rng.below(1'000'000'000'000'000ULL));
    ASSERT_EQ(crt_reconstruct(to_residues(x, moduli), moduli), x);
  }
}

TEST(Landau, MatchesPartitionEnumeration) {
  for (int b = 1; b <= 40; ++b) EXPECT_EQ(landau_g(b), landau_oracle(b)) << "b = " << b;
}

TEST(Primes, FirstPrimesAndInverse) {
  EXPECT_EQ(first_primes(6), (std::vector<std::int64_t>{2, 3, 5, 7, 11, 13}));
  for (std::int64_t p : {3, 7, 101}) {
    EXPECT_TRUE(is_prime(p));
    for (std::int64_t a = 1; a < p; ++a) EXPECT_EQ(mod(a * mod_inverse(a, p), p), 1);
  }
  EXPECT_FALSE(is_prime(91));
}

TEST(PhaseProductTable, MatchesDirectProduct) {
  const std::int64_t m = 11;
  const PhaseProductTable table(m);
  for (std::int64_t r = 0; r < m; ++r) {
    for (std::int64_t s = 0; s < m; ++s) EXPECT_EQ(table.product(r, s), f_op(ExactVector(m, {r}), ExactVector(m, {s}), m)[0]);
  }
}

}  // namespace
