#include "rhc/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rhc/errors.hpp"

namespace rhc {

using nlohmann::ordered_json;

namespace {

void check_header(const ordered_json& j, std::string_view format) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (!j.contains("format") || j["format"] != format) {
    throw ParseError("expected format \"" + std::string(format) + "\"");
  }
  if (!j.contains("version") || !j["version"].is_number_integer()) throw ParseError("missing version");
  const int version = j["version"].get<int>();
  if (version != kSerializationVersion) {
    throw ParseError("unsupported version " + std::to_string(version));
  }
}

void check_keys(const ordered_json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ParseError("unknown key \"" + key + "\"");
  }
}

ordered_json base_json(const ModulusBase& base) {
  ordered_json j;
  j["format"] = "rhc-base";
  j["version"] = kSerializationVersion;
  j["modulus"] = base.modulus;
  j["dim"] = base.dim;
  j["seed"] = base.seed;
  j["nonzero_only"] = base.nonzero_only;
  j["phase_indices"] = base.phase_indices;
  return j;
}

ModulusBase base_from(const ordered_json& j) {
  check_header(j, "rhc-base");
  check_keys(j, {"format", "version", "modulus", "dim", "seed", "nonzero_only", "phase_indices"});
  ModulusBase base;
  try {
    base.modulus = j.at("modulus").get<std::int64_t>();
    base.dim = j.at("dim").get<std::size_t>();
    base.seed = j.at("seed").get<std::uint64_t>();
    base.nonzero_only = j.at("nonzero_only").get<bool>();
    base.phase_indices = j.at("phase_indices").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed base: ") + e.what());
  }
  validate(base);
  return base;
}

ordered_json parse(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::string base_to_json(const ModulusBase& base) { return base_json(base).dump() + "\n"; }

ModulusBase base_from_json(std::string_view text) { return base_from(parse(text)); }

std::string system_to_json(const ResidueSystem& sys) {
  ordered_json j;
  j["format"] = "rhc-system";
  j["version"] = kSerializationVersion;
  j["bases"] = ordered_json::array();
  for (const auto& b : sys.bases()) j["bases"].push_back(base_json(b));
  return j.dump() + "\n";
}

ResidueSystem system_from_json(std::string_view text) {
  const ordered_json j = parse(text);
  check_header(j, "rhc-system");
  check_keys(j, {"format", "version", "bases"});
  if (!j.contains("bases") || !j["bases"].is_array()) throw ParseError("missing bases array");
  std::vector<ModulusBase> bases;
  for (const auto& b : j["bases"]) bases.push_back(base_from(b));
  return ResidueSystem(std::move(bases));
}

void save_system(const std::string& path, const ResidueSystem& sys) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << system_to_json(sys);
}

ResidueSystem load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return system_from_json(ss.str());
}

}  // namespace rhc
