#include <gtest/gtest.h>

#include <cmath>

#include "rhc/errors.hpp"
#include "rhc/random.hpp"
#include "rhc/scene.hpp"

namespace {

using namespace rhc;

FeatureMaps small_map() {
  FeatureMaps maps;
  maps.height = 105;
  maps.width = 105;
  maps.channels = {{0, {{1, 2, 0.5}, {3, 3, 1.25}}}, {4, {{0, 7, -2.0}}}};
  return maps;
}

void expect_close(const DenseVector& a, const DenseVector& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) ASSERT_NEAR(std::abs(a[j] - b[j]), 0.0, tol) << "component " << j;
}

TEST(SceneEncoding, TranslationIsBinding) {
  const auto enc = make_scene_encoder(512, 8, 3);
  const auto maps = small_map();
  const auto base = encode_scene(maps, enc);
  for (const auto& [dx, dy] : {std::pair{0, 0}, {5, 9}, {104, 1}, {60, 70}}) {
    const auto shift = to_dense(hadamard(encode(enc.hsys, dx), encode(enc.vsys, dy)));
    expect_close(encode_scene(translate(maps, dx, dy), enc), hadamard(shift, base), 1e-9);
  }
}

TEST(SceneEncoding, SuperpositionIsLinear) {
  const auto enc = make_scene_encoder(256, 8, 4);
  auto a = small_map();
  FeatureMaps b;
  b.height = a.height;
  b.width = a.width;
  b.channels = {{2, {{10, 11, 3.0}}}};
  FeatureMaps both = a;
  both.channels.push_back(b.channels[0]);
  const auto za = encode_scene(a, enc);
  const auto zb = encode_scene(b, enc);
  DenseVector sum(za.size());
  for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = za[j] + zb[j];
  expect_close(encode_scene(both, enc), sum, 1e-9);
}

TEST(SceneEncoding, EmptyMapIsZeroVector) {
  const auto enc = make_scene_encoder(64, 2, 1);
  FeatureMaps empty;
  empty.height = 4;
  empty.width = 4;
  for (const auto& z : encode_scene(empty, enc)) EXPECT_EQ(z, Complex(0.0, 0.0));
}

TEST(SceneCodebooks, VectorCounts) {
  const auto enc = make_scene_encoder(128, 16, 2);
  const auto objects = synthetic_objects({});
  const auto cb = build_object_codebook(objects, enc);
  EXPECT_EQ(make_scene_codebooks(cb, enc, SceneMode::kStandard).total_vectors(), 220u);
  EXPECT_EQ(make_scene_codebooks(cb, enc, SceneMode::kResidue).total_vectors(), 40u);
  EXPECT_EQ(make_scene_codebooks(cb, enc, SceneMode::kResidue).factors.size(), 7u);
}

TEST(SceneFactorize, RecoversObjectAndPosition) {
  SyntheticObjectConfig oc;
  oc.seed = 5;
  const auto objects = synthetic_objects(oc);
  const auto enc = make_scene_encoder(10000, oc.channels, 6);
  const auto cb = build_object_codebook(objects, enc);
  ResonatorConfig rc;
  rc.max_restarts = 10;
  for (const auto mode : {SceneMode::kStandard, SceneMode::kResidue}) {
    const auto books = make_scene_codebooks(cb, enc, mode);
    const auto scene = place_object(objects[3], 105, 105, 41, 77);
    const auto d = factorize_scene(encode_scene(scene, enc), books, rc);
    ASSERT_TRUE(d.success);
    EXPECT_EQ(d.object, 3);
    EXPECT_EQ(d.x, 41);
    EXPECT_EQ(d.y, 77);
  }
}

TEST(SceneJson, RoundTrip) {
  const auto maps = small_map();
  EXPECT_EQ(parse_feature_maps(dump_feature_maps(maps)), maps);
  const auto objects = synthetic_objects({});
  EXPECT_EQ(parse_object_corpus(dump_object_corpus(objects)), objects);
}

std::string error_of(std::string_view text) {
  try {
    parse_feature_maps(text, "scene.json");
  } catch (const ParseError& e) {
    return e.what();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(SceneJson, ErrorsNameTheProblem) {
  EXPECT_NE(error_of("{\"grid\": [4, 4],\n \"channels\": [}").find("line 2"), std::string::npos);
  EXPECT_NE(error_of(R"({"grid": [4], "channels": []})").find("grid"), std::string::npos);
  EXPECT_NE(error_of(R"({"grid": [4, 4], "channels": [{"id": 0, "coeffs": [[1, 9, 1.0]]}]})").find("channels"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"grid": [4, 4], "channels": [{"id": 0, "coeffs": [[1, 2]]}]})").find("coeffs"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"grid": [4, 4], "channels": [], "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(error_of("[1, 2]").find("scene.json"), std::string::npos);
}

TEST(SceneJson, DuplicateChannelsRejected) {
  auto maps = small_map();
  maps.channels.push_back(maps.channels[0]);
  EXPECT_THROW(validate(maps), ValidationError);
}

TEST(SyntheticObjects, Deterministic) {
  SyntheticObjectConfig c;
  c.seed = 9;
  EXPECT_EQ(synthetic_objects(c), synthetic_objects(c));
  for (const auto& o : synthetic_objects(c)) EXPECT_EQ(o.nonzeros(), c.features_per_object);
}

}  // namespace
