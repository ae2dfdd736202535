#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "rhc/errors.hpp"

namespace {

using namespace rhc::cli;
namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

TEST(Config, DefaultsThenFileThenFlags) {
  const auto file = parse_config_file(R"({"version": 1, "seed": 5, "kernel": {"D": 300, "step": 0.5}})");
  const auto r = resolve_config("kernel", file, {{"step", "0.25"}}, std::nullopt);
  EXPECT_EQ(r["seed"], 5);
  EXPECT_EQ(r["params"]["D"], 300);
  EXPECT_EQ(r["params"]["step"], 0.25);
  EXPECT_EQ(r["params"]["lo"], -8.0);
  EXPECT_EQ(resolve_config("kernel", file, {}, 9)["seed"], 9);
}

TEST(Config, RejectsMalformedFiles) {
  EXPECT_THROW(parse_config_file(R"({"seed": 1})"), rhc::ValidationError);
  EXPECT_THROW(parse_config_file(R"({"version": 2})"), rhc::ValidationError);
  EXPECT_THROW(parse_config_file(R"({"version": 1, "kernal": {}})"), rhc::ValidationError);
  EXPECT_THROW(parse_config_file(R"({"version": 1, "kernel": {"Dim": 3}})"), rhc::ValidationError);
  EXPECT_THROW(parse_config_file(R"({"version": 1, "kernel": {"D": "big"}})"), rhc::ValidationError);
  EXPECT_THROW(parse_config_file(R"({"version": 1, "seed": -3})"), rhc::ValidationError);
  EXPECT_THROW(parse_config_file("{"), rhc::ValidationError);
}

TEST(Config, FlagCoercion) {
  const auto& noise = schemas().at("noise");
  const auto kappas = std::find_if(noise.begin(), noise.end(), [](const Param& p) { return p.name == "kappas"; });
  ASSERT_NE(kappas, noise.end());
  EXPECT_EQ(coerce_flag(*kappas, "inf,2.5"), Json::parse(R"(["inf", 2.5])"));
  EXPECT_THROW(coerce_flag(*kappas, "-1"), rhc::ValidationError);
  EXPECT_THROW(coerce_flag(*kappas, "x"), rhc::ValidationError);
  EXPECT_THROW(resolve_config("kernel", Json::object(), {{"nope", "1"}}, std::nullopt), rhc::ValidationError);
  EXPECT_THROW(resolve_config("kernel", Json::object(), {{"D", "1.5"}}, std::nullopt), rhc::ValidationError);
}

TEST(Config, EveryCommandHasDefaults) {
  for (const auto& name : command_names()) {
    const auto r = resolve_config(name, Json::object(), {}, std::nullopt);
    EXPECT_EQ(r["command"], name);
    EXPECT_EQ(r["params"].size(), schemas().at(name).size());
  }
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Run, RerunsAreByteIdentical) {
  const auto resolved = resolve_config("capacity", Json::object(),
                                       {{"D", "128"}, {"trials", "8"}, {"max_range", "400"}}, 3);
  const auto a = fresh_dir("rhc_cli_a");
  const auto b = fresh_dir("rhc_cli_b");
  const auto files = run(resolved, a.string());
  EXPECT_EQ(run(resolved, b.string()), files);
  ASSERT_EQ(files.back(), "manifest.json");
  for (const auto& f : files) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  const auto manifest = Json::parse(slurp(a / "manifest.json"));
  EXPECT_EQ(manifest["config"], resolved);
  EXPECT_EQ(manifest["config_hash"], "fnv1a64:" + fnv1a_hex(resolved.dump()));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Run, SubsetSumInstanceFile) {
  const auto dir = fresh_dir("rhc_cli_ss");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "inst.json");
    f << R"({"items": [18, 4, 5, 10, 2, 23], "target": 21, "seed": 0})";
  }
  const auto resolved = resolve_config("subset-sum", Json::object(),
                                       {{"instance", (dir / "inst.json").string()}, {"dims", "2048"}}, 1);
  run(resolved, (dir / "out").string());
  const auto line = Json::parse(slurp(dir / "out" / "subset_sum_result.jsonl"));
  EXPECT_EQ(line["success"], true);
  int total = 0;
  const std::vector<int> items{18, 4, 5, 10, 2, 23};
  for (const auto& i : line["subset"]) total += items[i.get<std::size_t>()];
  EXPECT_EQ(total, 21);
  fs::remove_all(dir);
}

TEST(Run, SceneRejectsBrokenCorpus) {
  const auto dir = fresh_dir("rhc_cli_scene");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "objects.json");
    f << R"([{"grid": [8, 8], "channels": [{"id": 0, "coeffs": [[9, 0, 1.0]]}]}])";
  }
  const auto resolved = resolve_config("scene", Json::object(),
                                       {{"objects_file", (dir / "objects.json").string()}, {"D", "64"}}, 1);
  EXPECT_THROW(run(resolved, (dir / "out").string()), rhc::Error);
  fs::remove_all(dir);
}

}  // namespace
