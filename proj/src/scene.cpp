#include "rhc/scene.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "rhc/errors.hpp"
#include "rhc/random.hpp"

namespace rhc {

using nlohmann::json;

std::size_t FeatureMaps::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : channels) n += c.coeffs.size();
  return n;
}

void validate(const FeatureMaps& maps) {
  if (maps.height < 0 || maps.width < 0) throw ValidationError("feature-map grid must be non-negative");
  std::set<std::int64_t> ids;
  for (std::size_t c = 0; c < maps.channels.size(); ++c) {
    const auto& ch = maps.channels[c];
    if (!ids.insert(ch.id).second) {
      throw ValidationError("channels[" + std::to_string(c) + "]: duplicate id " + std::to_string(ch.id));
    }
    for (std::size_t k = 0; k < ch.coeffs.size(); ++k) {
      const auto& a = ch.coeffs[k];
      const std::string where = "channels[" + std::to_string(c) + "].coeffs[" + std::to_string(k) + "]";
      if (a.x < 0 || a.x >= maps.width || a.y < 0 || a.y >= maps.height) {
        throw ValidationError(where + ": (" + std::to_string(a.x) + ", " + std::to_string(a.y) +
                              ") outside the " + std::to_string(maps.height) + "x" +
                              std::to_string(maps.width) + " grid");
      }
      if (!std::isfinite(a.value)) throw ValidationError(where + ": value is not finite");
    }
  }
}

namespace {

[[noreturn]] void schema_error(std::string_view source, const std::string& path, const std::string& what) {
  throw ParseError(std::string(source) + ": " + path + ": " + what);
}

std::int64_t as_int(const json& j, std::string_view source, const std::string& path) {
  if (!j.is_number_integer()) schema_error(source, path, "expected an integer");
  return j.get<std::int64_t>();
}

FeatureMaps maps_from_json(const json& j, std::string_view source, const std::string& root) {
  if (!j.is_object()) schema_error(source, root, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "grid" && key != "channels") schema_error(source, root + "." + key, "unknown key");
  }
  FeatureMaps maps;
  if (!j.contains("grid") || !j["grid"].is_array() || j["grid"].size() != 2) {
    schema_error(source, root + ".grid", "expected [H, W]");
  }
  maps.height = as_int(j["grid"][0], source, root + ".grid[0]");
  maps.width = as_int(j["grid"][1], source, root + ".grid[1]");
  if (maps.height < 0 || maps.width < 0) schema_error(source, root + ".grid", "negative size");
  if (!j.contains("channels")) return maps;
  const json& chans = j["channels"];
  if (!chans.is_array()) schema_error(source, root + ".channels", "expected an array");
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const std::string cpath = root + ".channels[" + std::to_string(c) + "]";
    const json& ch = chans[c];
    if (!ch.is_object() || !ch.contains("id") || !ch.contains("coeffs")) {
      schema_error(source, cpath, "expected {\"id\", \"coeffs\"}");
    }
    FeatureChannel out;
    out.id = as_int(ch["id"], source, cpath + ".id");
    const json& coeffs = ch["coeffs"];
    if (!coeffs.is_array()) schema_error(source, cpath + ".coeffs", "expected an array");
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const std::string kpath = cpath + ".coeffs[" + std::to_string(k) + "]";
      const json& a = coeffs[k];
      if (!a.is_array() || a.size() != 3) schema_error(source, kpath, "expected [x, y, value]");
      FeatureCoeff f;
      f.x = as_int(a[0], source, kpath + "[0]");
      f.y = as_int(a[1], source, kpath + "[1]");
      if (!a[2].is_number()) schema_error(source, kpath + "[2]", "expected a number");
      f.value = a[2].get<double>();
      if (f.x < 0 || f.x >= maps.width || f.y < 0 || f.y >= maps.height) {
        schema_error(source, kpath, "coordinate (" + std::to_string(f.x) + ", " + std::to_string(f.y) +
                                        ") outside the grid");
      }
      out.coeffs.push_back(f);
    }
    maps.channels.push_back(std::move(out));
  }
  try {
    validate(maps);
  } catch (const ValidationError& e) {
    schema_error(source, root, e.what());
  }
  return maps;
}

json maps_to_json(const FeatureMaps& maps) {
  json channels = json::array();
  for (const auto& ch : maps.channels) {
    json coeffs = json::array();
    for (const auto& a : ch.coeffs) coeffs.push_back(json::array({a.x, a.y, a.value}));
    channels.push_back({{"id", ch.id}, {"coeffs", std::move(coeffs)}});
  }
  return {{"grid", {maps.height, maps.width}}, {"channels", std::move(channels)}};
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// cos/sin of 2 pi k / L for k in [0, L).
struct PhaseTable {
  std::vector<Complex> roots;
  explicit PhaseTable(std::int64_t period) : roots(static_cast<std::size_t>(period)) {
    for (std::int64_t k = 0; k < period; ++k) {
      const double t = 2.0 * static_cast<double>(k) / static_cast<double>(period);
      roots[static_cast<std::size_t>(k)] = {cos_pi(t), sin_pi(t)};
    }
  }
};

}  // namespace

FeatureMaps parse_feature_maps(std::string_view text, std::string_view source) {
  return maps_from_json(parse_json(text, source), source, "$");
}

std::string dump_feature_maps(const FeatureMaps& maps) {
  validate(maps);
  return maps_to_json(maps).dump() + "\n";
}

FeatureMaps read_feature_maps(const std::string& path) { return parse_feature_maps(slurp(path), path); }

void write_feature_maps(const std::string& path, const FeatureMaps& maps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << dump_feature_maps(maps);
}

std::vector<FeatureMaps> parse_object_corpus(std::string_view text, std::string_view source) {
  const json j = parse_json(text, source);
  if (!j.is_array()) throw ParseError(std::string(source) + ": $: expected an array of feature maps");
  std::vector<FeatureMaps> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(maps_from_json(j[i], source, "$[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string dump_object_corpus(const std::vector<FeatureMaps>& objects) {
  json arr = json::array();
  for (const auto& o : objects) {
    validate(o);
    arr.push_back(maps_to_json(o));
  }
  return arr.dump() + "\n";
}

SceneEncoder::SceneEncoder(ResidueSystem h, ResidueSystem v, std::map<std::int64_t, DenseVector> d)
    : hsys(std::move(h)), vsys(std::move(v)), features(std::move(d)) {
  if (hsys.dim() != vsys.dim()) throw DimensionMismatch("axis systems differ in dimension");
  for (const auto& [id, vec] : features) {
    if (vec.size() != hsys.dim()) {
      throw DimensionMismatch("feature vector " + std::to_string(id) + " has the wrong dimension");
    }
  }
}

SceneEncoder make_scene_encoder(std::size_t dim, const std::vector<std::int64_t>& channel_ids,
                                std::uint64_t seed, const std::vector<std::int64_t>& moduli) {
  ResidueSystem h(moduli, dim, derive_seed(seed, 0));
  ResidueSystem v(moduli, dim, derive_seed(seed, 1));
  std::map<std::int64_t, DenseVector> d;
  for (const auto id : channel_ids) {
    Rng rng(derive_seed(derive_seed(seed, 2), static_cast<std::uint64_t>(id)));
    DenseVector vec(dim);
    for (auto& c : vec) c = std::polar(1.0, rng.phase());
    d.emplace(id, std::move(vec));
  }
  return SceneEncoder(std::move(h), std::move(v), std::move(d));
}

SceneEncoder make_scene_encoder(std::size_t dim, std::size_t channels, std::uint64_t seed,
                                const std::vector<std::int64_t>& moduli) {
  std::vector<std::int64_t> ids(channels);
  for (std::size_t j = 0; j < channels; ++j) ids[j] = static_cast<std::int64_t>(j);
  return make_scene_encoder(dim, ids, seed, moduli);
}

DenseVector encode_scene(const FeatureMaps& maps, const SceneEncoder& enc) {
  validate(maps);
  if (maps.width > enc.hsys.range() || maps.height > enc.vsys.range()) {
    throw ParameterError("grid " + std::to_string(maps.height) + "x" + std::to_string(maps.width) +
                         " exceeds the axis ranges " + std::to_string(enc.vsys.range()) + "x" +
                         std::to_string(enc.hsys.range()));
  }
  const std::size_t dim = enc.dim();
  struct Term {
    std::vector<std::int64_t> h, v;
    const DenseVector* d;
    double value;
  };
  std::vector<Term> terms;
  terms.reserve(maps.nonzeros());
  for (const auto& ch : maps.channels) {
    const auto it = enc.features.find(ch.id);
    if (it == enc.features.end()) {
      throw ParameterError("no feature vector for channel id " + std::to_string(ch.id));
    }
    for (const auto& a : ch.coeffs) {
      const ExactVector h = encode(enc.hsys, a.x);
      const ExactVector v = encode(enc.vsys, a.y);
      terms.push_back(Term{{h.indices().begin(), h.indices().end()},
                           {v.indices().begin(), v.indices().end()}, &it->second, a.value});
    }
  }
  const PhaseTable ht(enc.hsys.range());
  const PhaseTable vt(enc.vsys.range());

  DenseVector s(dim, Complex{0.0, 0.0});
#pragma omp parallel for schedule(static) if (terms.size() * dim >= (1U << 16))
  for (std::size_t d = 0; d < dim; ++d) {
    Complex acc{0.0, 0.0};
    for (const auto& t : terms) {
      const Complex hv = ht.roots[static_cast<std::size_t>(t.h[d])] *
                         vt.roots[static_cast<std::size_t>(t.v[d])];
      acc += hv * (*t.d)[d] * t.value;
    }
    s[d] = acc;
  }
  return s;
}

FeatureMaps translate(const FeatureMaps& maps, std::int64_t dx, std::int64_t dy) {
  FeatureMaps out = maps;
  for (auto& ch : out.channels) {
    for (auto& a : ch.coeffs) {
      a.x = mod(a.x + dx, maps.width);
      a.y = mod(a.y + dy, maps.height);
    }
  }
  return out;
}

std::vector<DenseVector> object_vectors(const std::vector<FeatureMaps>& objects,
                                        const SceneEncoder& enc) {
  std::vector<DenseVector> out;
  out.reserve(objects.size());
  for (const auto& o : objects) out.push_back(encode_scene(o, enc));
  return out;
}

Codebook build_object_codebook(const std::vector<FeatureMaps>& objects, const SceneEncoder& enc) {
  if (objects.empty()) throw ParameterError("object codebook needs at least one object");
  std::vector<std::int64_t> labels(objects.size());
  std::vector<DenseVector> entries;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].nonzeros() == 0) throw ParameterError("object " + std::to_string(i) + " is empty");
    labels[i] = static_cast<std::int64_t>(i);
    entries.push_back(phase_normalize(encode_scene(objects[i], enc)));
  }
  return Codebook(std::move(labels), entries);
}

std::size_t SceneCodebooks::total_vectors() const {
  std::size_t n = 0;
  for (const auto& cb : factors) n += cb.size();
  return n;
}

SceneCodebooks make_scene_codebooks(const Codebook& objects, const SceneEncoder& enc, SceneMode mode) {
  if (objects.dim() != enc.dim()) throw DimensionMismatch("object codebook dimension mismatch");
  SceneCodebooks out;
  out.mode = mode;
  out.h_moduli.assign(enc.hsys.moduli().begin(), enc.hsys.moduli().end());
  out.v_moduli.assign(enc.vsys.moduli().begin(), enc.vsys.moduli().end());
  out.factors.push_back(objects);
  if (mode == SceneMode::kStandard) {
    out.h_factors = 1;
    out.factors.push_back(build_full_codebook(enc.hsys));
    out.factors.push_back(build_full_codebook(enc.vsys));
  } else {
    out.h_factors = enc.hsys.num_moduli();
    if (enc.vsys.num_moduli() != out.h_factors) {
      throw ParameterError("residue mode needs the same number of moduli on both axes");
    }
    for (auto& cb : build_residue_codebooks(enc.hsys)) out.factors.push_back(std::move(cb));
    for (auto& cb : build_residue_codebooks(enc.vsys)) out.factors.push_back(std::move(cb));
  }
  return out;
}

SceneDecode factorize_scene(std::span<const Complex> s, const SceneCodebooks& codebooks,
                            const ResonatorConfig& config) {
  if (codebooks.factors.empty()) throw ParameterError("scene codebooks are empty");
  double energy = 0.0;
  for (const auto& c : s) energy += std::norm(c);
  if (energy == 0.0) throw ParameterError("cannot factorize an empty scene");
  const DenseVector input = phase_normalize(s, 1e-12);
  const FactorizeResult f = resonator_factorize(input, codebooks.factors, config);

  SceneDecode out;
  out.success = f.success;
  out.evaluations = f.total_evaluations;
  out.attempts = f.attempts;
  out.verification = f.verification;
  out.object = f.labels[0];
  const std::size_t k = codebooks.h_factors;
  if (codebooks.mode == SceneMode::kStandard) {
    out.x = f.labels[1];
    out.y = f.labels[2];
  } else {
    const std::span<const std::int64_t> labels(f.labels);
    out.x = crt_reconstruct(labels.subspan(1, k), codebooks.h_moduli);
    out.y = crt_reconstruct(labels.subspan(1 + k, k), codebooks.v_moduli);
  }
  return out;
}

std::vector<FeatureMaps> synthetic_objects(const SyntheticObjectConfig& config) {
  if (config.objects == 0 || config.channels == 0 || config.frame < 1) {
    throw ParameterError("synthetic objects need objects, channels and frame >= 1");
  }
  const std::uint64_t cells = static_cast<std::uint64_t>(config.frame * config.frame) * config.channels;
  if (config.features_per_object == 0 || config.features_per_object > cells) {
    throw ParameterError("features_per_object must be in [1, frame^2 * channels]");
  }
  if (!(config.min_value < config.max_value)) throw ParameterError("need min_value < max_value");

  std::vector<FeatureMaps> out;
  for (std::size_t i = 0; i < config.objects; ++i) {
    Rng rng(derive_seed(config.seed, i));
    std::map<std::int64_t, FeatureChannel> chans;
    std::set<std::uint64_t> used;
    while (used.size() < config.features_per_object) {
      const std::uint64_t cell = rng.below(cells);
      if (!used.insert(cell).second) continue;
      const auto channel = static_cast<std::int64_t>(cell % config.channels);
      const auto pos = static_cast<std::int64_t>(cell / config.channels);
      const double value = config.min_value + (config.max_value - config.min_value) * rng.uniform();
      auto& ch = chans[channel];
      ch.id = channel;
      ch.coeffs.push_back({pos % config.frame, pos / config.frame, value});
    }
    FeatureMaps maps;
    maps.height = config.frame;
    maps.width = config.frame;
    for (auto& [_, ch] : chans) maps.channels.push_back(std::move(ch));
    out.push_back(std::move(maps));
  }
  return out;
}

FeatureMaps place_object(const FeatureMaps& object, std::int64_t height, std::int64_t width,
                         std::int64_t x, std::int64_t y) {
  if (object.height > height || object.width > width) {
    throw ParameterError("object frame larger than the scene grid");
  }
  FeatureMaps out = object;
  out.height = height;
  out.width = width;
  return translate(out, x, y);
}

SceneExperimentResult scene_experiment(const SceneExperimentConfig& config) {
  SyntheticObjectConfig oc = config.objects;
  oc.seed = derive_seed(config.seed, 0);
  return scene_experiment(config, synthetic_objects(oc));
}

SceneExperimentResult scene_experiment(const SceneExperimentConfig& config,
                                       const std::vector<FeatureMaps>& objects) {
  if (config.scenes == 0) throw ParameterError("scene experiment needs scenes >= 1");
  std::set<std::int64_t> ids;
  for (const auto& o : objects) {
    for (const auto& ch : o.channels) ids.insert(ch.id);
  }
  const SceneEncoder enc = make_scene_encoder(config.dim, std::vector<std::int64_t>(ids.begin(), ids.end()),
                                              derive_seed(config.seed, 1));
  const Codebook obj = build_object_codebook(objects, enc);
  const SceneCodebooks standard = make_scene_codebooks(obj, enc, SceneMode::kStandard);
  const SceneCodebooks residue = make_scene_codebooks(obj, enc, SceneMode::kResidue);
  const std::int64_t width = enc.hsys.range();
  const std::int64_t height = enc.vsys.range();

  SceneExperimentResult out;
  out.standard_vectors = standard.total_vectors();
  out.residue_vectors = residue.total_vectors();
  out.brute_force_evaluations = static_cast<double>(obj.size()) * static_cast<double>(width) *
                                static_cast<double>(height);
  out.trials.resize(config.scenes);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < config.scenes; ++t) {
    const std::uint64_t trial_seed = derive_seed(derive_seed(config.seed, 2), t);
    Rng rng(trial_seed);
    SceneTrial& trial = out.trials[t];
    trial.object = static_cast<std::int64_t>(rng.below(objects.size()));
    trial.x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(width)));
    trial.y = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(height)));
    const FeatureMaps scene = place_object(objects[static_cast<std::size_t>(trial.object)], height,
                                           width, trial.x, trial.y);
    const DenseVector s = encode_scene(scene, enc);
    ResonatorConfig rc = config.resonator;
    rc.seed = derive_seed(trial_seed, 1);
    trial.standard = factorize_scene(s, standard, rc);
    trial.residue = factorize_scene(s, residue, rc);
  }

  auto correct = [](const SceneTrial& t, const SceneDecode& d) {
    return d.success && d.object == t.object && d.x == t.x && d.y == t.y;
  };
  for (const auto& t : out.trials) {
    out.standard_accuracy += correct(t, t.standard) ? 1.0 : 0.0;
    out.residue_accuracy += correct(t, t.residue) ? 1.0 : 0.0;
    out.standard_mean_evaluations += static_cast<double>(t.standard.evaluations);
    out.residue_mean_evaluations += static_cast<double>(t.residue.evaluations);
  }
  const double n = static_cast<double>(config.scenes);
  out.standard_accuracy /= n;
  out.residue_accuracy /= n;
  out.standard_mean_evaluations /= n;
  out.residue_mean_evaluations /= n;
  return out;
}

}  // namespace rhc
