#pragma once

// Experiment command line: subcommands, versioned JSON config files with
// flag overrides, and artifact manifests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace rhc::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kConfigVersion = 1;

enum class ParamType { kInt, kReal, kKappa, kBool, kString, kIntList, kRealList, kKappaList };

struct Param {
  std::string name;
  ParamType type;
  Json fallback;  // default value
  std::string help;
};

// Parameter schema per subcommand, in declaration order.
const std::map<std::string, std::vector<Param>>& schemas();
std::vector<std::string> command_names();

// Converts a value from a config file to the parameter's canonical form.
// Kappa values are numbers >= 0 or the string "inf".
Json coerce(const Param& p, const Json& value);
// Same for a flag string; lists are comma-separated.
Json coerce_flag(const Param& p, std::string_view text);

// {"version": 1, "seed": s, "<command>": {...}, ...}. Unknown keys, wrong
// types and version mismatches throw rhc::ValidationError.
Json parse_config_file(std::string_view text);

// Defaults, then the file's section for `command`, then flag overrides.
// Result: {"version", "command", "seed", "params": {...}}.
Json resolve_config(const std::string& command, const Json& file,
                    const std::map<std::string, std::string>& flags,
                    std::optional<std::uint64_t> seed_flag);

// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Runs a resolved config, writing artifacts and manifest.json under
// out_dir. Returns the names of the files written (manifest last).
std::vector<std::string> run(const Json& resolved, const std::string& out_dir);

// Process entry point; returns the exit status.
int main_entry(int argc, char** argv);

}  // namespace rhc::cli
