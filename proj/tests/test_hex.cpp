#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "rhc/hex.hpp"
#include "rhc/random.hpp"

namespace {

using namespace rhc;

Coord3 add3(const Coord3& a, const Coord3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

double plane_distance2(const Coord3& y, const Vec3& p) {
  // Squared distance between the projections of y and p onto sum = 0; p
  // already lies on that plane.
  double ss = 0.0, s = 0.0;
  for (int k = 0; k < 3; ++k) {
    ss += (y[k] - p[k]) * (y[k] - p[k]);
    s += static_cast<double>(y[k]);
  }
  return ss - s * s / 3.0;
}

Vec2 rotate(const Vec2& x, double degrees) {
  const double t = degrees * std::numbers::pi / 180.0;
  return {std::cos(t) * x[0] - std::sin(t) * x[1], std::sin(t) * x[0] + std::cos(t) * x[1]};
}

TEST(HexFrame, RowsAreUnitVectorsSummingToZero) {
  const auto& psi = hex_frame();
  double sx = 0.0, sy = 0.0;
  for (const auto& r : psi) {
    EXPECT_NEAR(r[0] * r[0] + r[1] * r[1], 1.0, 1e-15);
    sx += r[0];
    sy += r[1];
  }
  EXPECT_NEAR(sx, 0.0, 1e-15);
  EXPECT_NEAR(sy, 0.0, 1e-15);
  // Psi^T Psi = (3/2) I.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double g = 0.0;
      for (const auto& r : psi) g += r[a] * r[b];
      EXPECT_NEAR(g, a == b ? 1.5 : 0.0, 1e-15);
    }
  }
}

TEST(HexBase, TripletsSumToZero) {
  const auto t = sample_hex_base(7, 2000, 3);
  for (std::size_t j = 0; j < 2000; ++j) {
    EXPECT_EQ((t[0].phase_indices[j] + t[1].phase_indices[j] + t[2].phase_indices[j]) % 7, 0);
  }
}

TEST(HexEncoding, DiagonalShiftIsInvisible) {
  const HexSystem sys({3, 5, 7}, 512, 9);
  EXPECT_EQ(encode_hex(sys, Coord3{1, 1, 1}), encode_hex(sys, Coord3{0, 0, 0}));
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Coord3 y{static_cast<std::int64_t>(rng.below(200)) - 100, static_cast<std::int64_t>(rng.below(200)) - 100,
                   static_cast<std::int64_t>(rng.below(200)) - 100};
    const std::int64_t k = static_cast<std::int64_t>(rng.below(40)) - 20;
    EXPECT_EQ(encode_hex(sys, add3(y, {k, k, k})), encode_hex(sys, y));
    EXPECT_EQ(encode_hex(sys, canonical_hex(y)), encode_hex(sys, y));
  }
}

TEST(HexEncoding, BindingComposesDisplacements) {
  // Path independence: any order of steps lands on the same vector.
  const HexSystem sys({5, 7}, 256, 2);
  const std::vector<Coord3> steps{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 1}, {0, 3, 0}};
  Coord3 total{0, 0, 0};
  ExactVector forward = encode_hex(sys, Coord3{0, 0, 0});
  for (const auto& s : steps) {
    total = add3(total, s);
    forward = hadamard(forward, encode_hex(sys, s));
  }
  ExactVector backward = encode_hex(sys, Coord3{0, 0, 0});
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) backward = hadamard(backward, encode_hex(sys, *it));
  EXPECT_EQ(forward, encode_hex(sys, total));
  EXPECT_EQ(backward, forward);
}

TEST(HexEncoding, DistinctCodeVectorsAreMSquared) {
  for (std::int64_t m : {2, 3, 5, 7}) {
    const HexSystem sys({m}, 64, static_cast<std::uint64_t>(m));
    std::set<std::vector<std::int64_t>> seen;
    for (std::int64_t a = 0; a < m; ++a) {
      for (std::int64_t b = 0; b < m; ++b) {
        for (std::int64_t c = 0; c < m; ++c) {
          const auto v = encode_hex(sys, Coord3{a, b, c});
          seen.emplace(v.indices().begin(), v.indices().end());
        }
      }
    }
    EXPECT_EQ(static_cast<std::int64_t>(seen.size()), m * m) << "m=" << m;
  }
}

TEST(HexCounts, StateCountsMatchEnumeration) {
  for (std::int64_t m = 1; m <= 12; ++m) {
    EXPECT_EQ(enumerate_hex_states(m), 3 * m * m - 3 * m + 1);
    EXPECT_EQ(hex_state_count(m), enumerate_hex_states(m));
    EXPECT_EQ(square_state_count(m), m * m);
    EXPECT_EQ(hex_codebook_size(m), 3 * m);
    EXPECT_EQ(square_codebook_size(m), 2 * m);
    EXPECT_NEAR(code_entropy(hex_state_count(m)), std::log2(static_cast<double>(3 * m * m - 3 * m + 1)), 1e-12);
    if (m >= 2) {
      EXPECT_GT(code_entropy(hex_state_count(m)), code_entropy(square_state_count(m)));
    }
  }
}

TEST(HexNearest, MatchesBruteForceSearch) {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const Vec2 x{rng.uniform() * 20.0 - 10.0, rng.uniform() * 20.0 - 10.0};
    const Vec3 p = hex_project(x);
    double best = 1e300;
    for (std::int64_t a = -12; a <= 12; ++a) {
      for (std::int64_t b = -12; b <= 12; ++b) {
        for (std::int64_t c = -12; c <= 12; ++c) best = std::min(best, plane_distance2({a, b, c}, p));
      }
    }
    const Coord3 y = nearest_hex_coordinate(x);
    EXPECT_NEAR(plane_distance2(y, p), best, 1e-9);
    EXPECT_EQ(std::min({y[0], y[1], y[2]}), 0);
  }
}

TEST(HexNearest, SixFoldSymmetry) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const Vec2 x{rng.uniform() * 16.0 - 8.0, rng.uniform() * 16.0 - 8.0};
    const Coord3 y = nearest_hex_coordinate(x);
    // +120 degrees cycles the projections (p1, p2, p3) -> (p3, p1, p2).
    EXPECT_EQ(nearest_hex_coordinate(rotate(x, 120.0)), canonical_hex({y[2], y[0], y[1]}));
    // +60 degrees is +240 followed by a half turn.
    EXPECT_EQ(nearest_hex_coordinate(rotate(x, 60.0)), canonical_hex({-y[1], -y[2], -y[0]}));
  }
}

TEST(HexEncoding, PlanePointUsesNearestState) {
  const HexSystem sys({3, 5}, 256, 8);
  const Vec2 x{1.3, -2.2};
  EXPECT_EQ(encode_hex(sys, x), encode_hex(sys, nearest_hex_coordinate(x)));
}

TEST(HexHeatmap, PeakAtOriginAndEvenSymmetry) {
  const HexSystem sys({3, 5}, 1000, 5);
  const auto heat = hex_heatmap(sys, -3.0, 3.0, 0.5);
  const std::size_t n = 13;
  ASSERT_EQ(heat.size(), n * n);
  for (std::size_t i = 0; i < heat.size(); ++i) {
    const auto& mirror = heat[heat.size() - 1 - i];
    EXPECT_NEAR(heat[i].x, -mirror.x, 1e-12);
    EXPECT_NEAR(heat[i].similarity, mirror.similarity, 1e-9);
    if (std::abs(heat[i].x) < 1e-12 && std::abs(heat[i].y) < 1e-12) {
      EXPECT_NEAR(heat[i].similarity, 1.0, 1e-12);
    }
  }
}

TEST(HexDecode, RecoversEquivalentCoordinate) {
  const HexSystem sys({3, 5}, 1500, 12);
  ResonatorConfig rc;
  rc.max_restarts = 5;
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Coord3 y{static_cast<std::int64_t>(rng.below(15)), static_cast<std::int64_t>(rng.below(15)),
                   static_cast<std::int64_t>(rng.below(15))};
    rc.seed = derive_seed(2, i);
    const auto d = decode_hex(sys, to_dense(encode_hex(sys, y)), rc);
    ASSERT_TRUE(d.success);
    EXPECT_EQ(encode_hex(sys, d.coordinate), encode_hex(sys, y));
    EXPECT_EQ(d.coordinate, canonical_hex(d.coordinate));
  }
}

TEST(Cartesian, AxesBindIndependently) {
  const std::vector<ResidueSystem> axes{ResidueSystem({3, 5}, 128, 1), ResidueSystem({3, 5}, 128, 2)};
  const std::vector<std::int64_t> a{4, 9}, b{7, 13}, sum{11, 22};
  EXPECT_EQ(hadamard(encode_cartesian(axes, a), encode_cartesian(axes, b)), encode_cartesian(axes, sum));
  const std::vector<std::int64_t> swapped{9, 4};
  EXPECT_NE(encode_cartesian(axes, a), encode_cartesian(axes, swapped));
}

}  // namespace
