#pragma once

// Versioned JSON storage for bases and residue systems. Phase indices are
// stored as integers, so a round trip is bit-exact.
//
//   {"format": "rhc-base", "version": 1, "modulus": m, "dim": D, "seed": s,
//    "nonzero_only": false, "phase_indices": [...]}
//   {"format": "rhc-system", "version": 1, "bases": [<base>, ...]}

#include <string>
#include <string_view>

#include "rhc/phasor.hpp"
#include "rhc/residue.hpp"

namespace rhc {

inline constexpr int kSerializationVersion = 1;

std::string base_to_json(const ModulusBase& base);
ModulusBase base_from_json(std::string_view text);

std::string system_to_json(const ResidueSystem& sys);
ResidueSystem system_from_json(std::string_view text);

void save_system(const std::string& path, const ResidueSystem& sys);
ResidueSystem load_system(const std::string& path);

}  // namespace rhc
