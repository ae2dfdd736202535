#include <gtest/gtest.h>

#include <filesystem>

#include "rhc/errors.hpp"
#include "rhc/serialize.hpp"

namespace {

using namespace rhc;

TEST(Serialize, BaseRoundTrip) {
  const auto base = sample_base(13, 100, 77, true);
  EXPECT_EQ(base_from_json(base_to_json(base)), base);
}

TEST(Serialize, SystemRoundTripThroughFile) {
  const ResidueSystem sys({5, 7, 9}, 300, 12);
  const auto path = std::filesystem::temp_directory_path() / "rhc_system_roundtrip.json";
  save_system(path.string(), sys);
  const auto back = load_system(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(back.range(), sys.range());
  ASSERT_EQ(back.num_moduli(), sys.num_moduli());
  for (std::size_t k = 0; k < sys.num_moduli(); ++k) EXPECT_EQ(back.base(k), sys.base(k));
  EXPECT_EQ(encode(back, 123), encode(sys, 123));
}

TEST(Serialize, RejectsUnknownKeysAndVersions) {
  const auto text = base_to_json(sample_base(5, 4, 1));
  auto j = text;
  j.insert(1, "\"extra\":0,");
  EXPECT_ANY_THROW(base_from_json(j));
  const auto pos = text.find("\"version\":1");
  ASSERT_NE(pos, std::string::npos);
  auto v2 = text;
  v2.replace(pos, 11, "\"version\":2");
  EXPECT_ANY_THROW(base_from_json(v2));
  EXPECT_ANY_THROW(base_from_json("not json"));
}

TEST(Serialize, RejectsInconsistentBases) {
  auto base = sample_base(5, 4, 1);
  base.phase_indices[0] = 9;
  EXPECT_ANY_THROW(base_from_json(base_to_json(base)));
  EXPECT_ANY_THROW(ResidueSystem(std::vector<ModulusBase>{sample_base(5, 4, 1), sample_base(7, 8, 1)}));
  EXPECT_ANY_THROW(ResidueSystem(std::vector<ModulusBase>{sample_base(4, 4, 1), sample_base(6, 4, 1)}));
}

}  // namespace
