#pragma once

// Visual-scene factorization. A scene is a sparse set of feature coefficients
// A_j(x, y) encoded as
//
//   s = sum_{j,x,y} h(x) (.) v(y) (.) d_j * A_j(x, y),
//
// with h and v residue encodings of the two axes and d_j random phasors per
// feature channel. An object drawn in its canonical frame gives O^(i); the
// same object translated to (x, y) gives h(x) (.) v(y) (.) O^(i), which the
// resonator factors into identity and position.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rhc/codebook.hpp"
#include "rhc/residue.hpp"
#include "rhc/resonator.hpp"

namespace rhc {

struct FeatureCoeff {
  std::int64_t x = 0;
  std::int64_t y = 0;
  double value = 0.0;
  friend bool operator==(const FeatureCoeff&, const FeatureCoeff&) = default;
};

struct FeatureChannel {
  std::int64_t id = 0;
  std::vector<FeatureCoeff> coeffs;
  friend bool operator==(const FeatureChannel&, const FeatureChannel&) = default;
};

struct FeatureMaps {
  std::int64_t height = 0;
  std::int64_t width = 0;
  std::vector<FeatureChannel> channels;

  [[nodiscard]] std::size_t nonzeros() const;
  friend bool operator==(const FeatureMaps&, const FeatureMaps&) = default;
};

// Coordinates inside the grid, finite values, unique channel ids. Errors name
// the offending channel and coefficient.
void validate(const FeatureMaps& maps);

// JSON {"grid": [H, W], "channels": [{"id": j, "coeffs": [[x, y, value], ...]}]}.
// Syntax errors carry line/column, schema errors the JSON path; `source`
// (e.g. a file name) prefixes both.
FeatureMaps parse_feature_maps(std::string_view text, std::string_view source = "<input>");
std::string dump_feature_maps(const FeatureMaps& maps);
FeatureMaps read_feature_maps(const std::string& path);
void write_feature_maps(const std::string& path, const FeatureMaps& maps);

// A list of canonical-frame object maps, as a JSON array.
std::vector<FeatureMaps> parse_object_corpus(std::string_view text, std::string_view source = "<input>");
std::string dump_object_corpus(const std::vector<FeatureMaps>& objects);

// Everything needed to encode scenes: the two axis systems and one random
// phasor per feature channel.
struct SceneEncoder {
  ResidueSystem hsys;
  ResidueSystem vsys;
  std::map<std::int64_t, DenseVector> features;

  SceneEncoder(ResidueSystem h, ResidueSystem v, std::map<std::int64_t, DenseVector> d);
  [[nodiscard]] std::size_t dim() const { return hsys.dim(); }
};

// Axis systems {3, 5, 7} (range 105) with independent seeds, plus feature
// vectors for channel ids [0, channels).
SceneEncoder make_scene_encoder(std::size_t dim, std::size_t channels, std::uint64_t seed,
                                const std::vector<std::int64_t>& moduli = {3, 5, 7});
// Same, for an explicit set of channel ids.
SceneEncoder make_scene_encoder(std::size_t dim, const std::vector<std::int64_t>& channel_ids,
                                std::uint64_t seed, const std::vector<std::int64_t>& moduli = {3, 5, 7});

// Not unit-magnitude; an empty map encodes to the zero vector. Parallel over
// components, each summing coefficients in file order.
DenseVector encode_scene(const FeatureMaps& maps, const SceneEncoder& enc);

// The maps shifted by (dx, dy) with coordinates wrapped onto the grid.
FeatureMaps translate(const FeatureMaps& maps, std::int64_t dx, std::int64_t dy);

// Raw object vectors O^(i), one per canonical-frame map.
std::vector<DenseVector> object_vectors(const std::vector<FeatureMaps>& objects,
                                        const SceneEncoder& enc);
// Codebook of g(O^(i)) labeled 0..n-1. Phase-normalizing the entries makes
// g(s) an exact product of codebook entries for a single translated object.
Codebook build_object_codebook(const std::vector<FeatureMaps>& objects, const SceneEncoder& enc);

enum class SceneMode { kStandard, kResidue };

struct SceneCodebooks {
  SceneMode mode = SceneMode::kResidue;
  std::vector<Codebook> factors;  // object first, then h axis, then v axis
  std::size_t h_factors = 0;      // number of codebooks per axis
  std::vector<std::int64_t> h_moduli;
  std::vector<std::int64_t> v_moduli;

  [[nodiscard]] std::size_t total_vectors() const;
};

// Standard: objects + full |H| + full |V| codebooks (3 factors).
// Residue: objects + one codebook per axis modulus (1 + 2K factors).
SceneCodebooks make_scene_codebooks(const Codebook& objects, const SceneEncoder& enc,
                                    SceneMode mode);

struct SceneDecode {
  bool success = false;
  std::int64_t object = -1;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::uint64_t evaluations = 0;
  int attempts = 0;
  double verification = 0.0;  // similarity of the decoded product with g(s)
};

// Phase-normalizes s, then runs the resonator with restarts on spurious
// fixed points.
SceneDecode factorize_scene(std::span<const Complex> s, const SceneCodebooks& codebooks,
                            const ResonatorConfig& config);

struct SyntheticObjectConfig {
  std::size_t objects = 10;
  std::size_t channels = 16;
  std::size_t features_per_object = 12;
  std::int64_t frame = 8;  // canonical frame is frame x frame
  double min_value = 0.5;
  double max_value = 1.5;
  std::uint64_t seed = 0;
};

// Random sparse objects: each feature picks a channel and a frame cell
// uniformly (no cell/channel repeats within an object) and a value uniform on
// [min_value, max_value). Fewer channels or a smaller frame raise overlap.
std::vector<FeatureMaps> synthetic_objects(const SyntheticObjectConfig& config);

// Object placed with its frame origin at (x, y) on an H x W grid, wrapping.
FeatureMaps place_object(const FeatureMaps& object, std::int64_t height, std::int64_t width,
                         std::int64_t x, std::int64_t y);

struct SceneExperimentConfig {
  std::size_t dim = 10000;
  std::size_t scenes = 50;
  SyntheticObjectConfig objects{};
  // Seven-factor residue runs often settle on a spurious fixed point first.
  ResonatorConfig resonator{.max_restarts = 10};
  std::uint64_t seed = 0;
};

struct SceneTrial {
  std::int64_t object = 0, x = 0, y = 0;
  SceneDecode standard, residue;
};

struct SceneExperimentResult {
  std::size_t standard_vectors = 0;
  std::size_t residue_vectors = 0;
  double standard_accuracy = 0.0;
  double residue_accuracy = 0.0;
  double standard_mean_evaluations = 0.0;
  double residue_mean_evaluations = 0.0;
  double brute_force_evaluations = 0.0;  // |O| * |H| * |V|
  std::vector<SceneTrial> trials;
};

// Both modes on the same scenes: one object each at a uniform position.
SceneExperimentResult scene_experiment(const SceneExperimentConfig& config);
// With a given object corpus (config.objects is ignored).
SceneExperimentResult scene_experiment(const SceneExperimentConfig& config,
                                       const std::vector<FeatureMaps>& objects);

}  // namespace rhc
