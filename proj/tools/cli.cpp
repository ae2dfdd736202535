#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "rhc/baselines.hpp"
#include "rhc/csv.hpp"
#include "rhc/errors.hpp"
#include "rhc/experiments.hpp"
#include "rhc/hex.hpp"
#include "rhc/kernel.hpp"
#include "rhc/random.hpp"
#include "rhc/scene.hpp"
#include "rhc/serialize.hpp"
#include "rhc/subset_sum.hpp"
#include "rhc/version.hpp"

namespace rhc::cli {

namespace {

using T = ParamType;

// Resonator knobs shared by every decoding command.
std::vector<Param> with_resonator(std::vector<Param> params, int max_restarts) {
  params.push_back({"alpha", T::kReal, 0.95, "convergence threshold between successive states"});
  params.push_back({"max_iters", T::kInt, 100, "sweeps per attempt"});
  params.push_back({"max_restarts", T::kInt, max_restarts, "restarts after a failed attempt"});
  return params;
}

std::string type_name(ParamType t) {
  switch (t) {
    case T::kInt: return "integer";
    case T::kReal: return "number";
    case T::kKappa: return "number >= 0 or \"inf\"";
    case T::kBool: return "boolean";
    case T::kString: return "string";
    case T::kIntList: return "list of integers";
    case T::kRealList: return "list of numbers";
    case T::kKappaList: return "list of kappas";
  }
  return "value";
}

[[noreturn]] void bad_value(const Param& p, const std::string& got) {
  throw ValidationError("parameter \"" + p.name + "\" expects " + type_name(p.type) + ", got " + got);
}

ParamType element_type(ParamType t) {
  switch (t) {
    case T::kIntList: return T::kInt;
    case T::kRealList: return T::kReal;
    case T::kKappaList: return T::kKappa;
    default: return t;
  }
}

bool is_list(ParamType t) { return t == T::kIntList || t == T::kRealList || t == T::kKappaList; }

Json coerce_scalar(const Param& p, ParamType t, const Json& v) {
  switch (t) {
    case T::kInt:
      if (v.is_number_integer()) return v;
      break;
    case T::kReal:
      if (v.is_number()) return v.get<double>();
      break;
    case T::kKappa:
      if (v.is_string() && v.get<std::string>() == "inf") return v;
      if (v.is_number() && v.get<double>() >= 0.0) return v.get<double>();
      break;
    case T::kBool:
      if (v.is_boolean()) return v;
      break;
    case T::kString:
      if (v.is_string()) return v;
      break;
    default:
      break;
  }
  bad_value(p, v.dump());
}

double kappa_value(const Json& v) {
  return v.is_string() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

Json parse_scalar_text(const Param& p, ParamType t, std::string_view text) {
  const std::string s(text);
  switch (t) {
    case T::kInt: {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) bad_value(p, "\"" + s + "\"");
      return v;
    }
    case T::kReal:
    case T::kKappa: {
      if (t == T::kKappa && s == "inf") return "inf";
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        bad_value(p, "\"" + s + "\"");
      }
      return coerce_scalar(p, t, v);
    }
    case T::kBool:
      if (s == "true" || s == "1") return true;
      if (s == "false" || s == "0") return false;
      bad_value(p, "\"" + s + "\"");
    case T::kString:
      return s;
    default:
      bad_value(p, "\"" + s + "\"");
  }
}

std::uint64_t as_u64(const Json& v, const std::string& what) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ValidationError(what + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

// ---- parameter access on a resolved "params" object ----

struct Params {
  const Json& j;
  std::int64_t i(const char* k) const { return j.at(k).get<std::int64_t>(); }
  std::size_t positive(const char* k) const {
    const auto v = i(k);
    if (v < 1) throw ValidationError(std::string(k) + " must be >= 1");
    return static_cast<std::size_t>(v);
  }
  double r(const char* k) const { return j.at(k).get<double>(); }
  double kappa(const char* k) const { return kappa_value(j.at(k)); }
  std::string s(const char* k) const { return j.at(k).get<std::string>(); }
  std::vector<std::int64_t> ints(const char* k) const { return j.at(k).get<std::vector<std::int64_t>>(); }
  std::vector<double> reals(const char* k) const { return j.at(k).get<std::vector<double>>(); }
  std::vector<double> kappas(const char* k) const {
    std::vector<double> out;
    for (const auto& v : j.at(k)) out.push_back(kappa_value(v));
    return out;
  }
  ResonatorConfig resonator() const {
    ResonatorConfig rc;
    rc.alpha = r("alpha");
    rc.max_iters = static_cast<int>(i("max_iters"));
    rc.max_restarts = static_cast<int>(i("max_restarts"));
    validate(rc);
    return rc;
  }
};

// ---- output helpers ----

class Outputs {
 public:
  explicit Outputs(std::string dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error("cannot create output directory " + dir_ + ": " + ec.message());
  }

  std::ofstream open(const std::string& name) {
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    names_.push_back(name);
    return out;
  }

  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::vector<std::string> names_;
};

std::string kappa_text(double k) { return std::isinf(k) ? "inf" : format_number(k); }

// ---- commands ----

void run_kernel(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  const auto moduli = p.ints("m");
  if (moduli.empty()) throw ValidationError("m must list at least one modulus");
  const auto dim = p.positive("D");
  const auto grid = make_grid(p.r("lo"), p.r("hi"), p.r("step"));
  std::vector<KernelPoint> curve;
  if (moduli.size() == 1) {
    curve = empirical_kernel(sample_base(moduli[0], dim, derive_seed(seed, 0)), grid);
  } else {
    curve = empirical_kernel(ResidueSystem(moduli, dim, derive_seed(seed, 0)), grid);
  }
  auto f = out.open("kernel.csv");
  write_kernel_csv(f, curve);
  double worst = 0.0;
  for (const auto& k : curve) worst = std::max(worst, k.abs_error);
  summary["max_abs_error"] = worst;
  summary["points"] = curve.size();
}

void write_decode_points(const std::vector<DecodePoint>& points, Outputs& out, const std::string& stem) {
  auto jl = out.open(stem + ".jsonl");
  for (const auto& pt : points) jl << to_json_line(pt) << "\n";
  auto f = out.open(stem + ".csv");
  CsvWriter csv(f);
  csv.header({"D", "K", "M", "kappa", "trials", "accuracy", "mean_evaluations", "normalized_evaluations"});
  for (const auto& pt : points) {
    csv.row({static_cast<std::int64_t>(pt.dim), static_cast<std::int64_t>(pt.moduli.size()), pt.range,
             kappa_text(pt.kappa), static_cast<std::int64_t>(pt.trials), pt.accuracy, pt.mean_evaluations,
             pt.normalized_evaluations});
  }
}

void run_capacity(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  CapacityConfig c;
  c.dim = p.positive("D");
  c.num_moduli = p.positive("K");
  c.kappa = p.kappa("kappa");
  c.threshold = p.r("threshold");
  c.stop_threshold = p.r("stop_threshold");
  c.trials = static_cast<int>(p.positive("trials"));
  c.start_range = p.r("start_range");
  c.growth = p.r("growth");
  c.max_range = p.r("max_range");
  c.resonator = p.resonator();
  c.seed = seed;
  const CapacityResult r = capacity_experiment(c);
  write_decode_points(r.curve, out, "capacity");
  summary["capacity"] = r.capacity;
  summary["points"] = r.curve.size();
}

void run_noise(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  const auto dim = p.positive("D");
  const auto k = p.positive("K");
  const int trials = static_cast<int>(p.positive("trials"));
  const ResonatorConfig rc = p.resonator();
  std::vector<DecodePoint> points;
  std::uint64_t index = 0;
  for (const double kappa : p.kappas("kappas")) {
    for (const double target : p.reals("ranges")) {
      points.push_back(decode_point(moduli_near(target, k), dim, kappa, trials, rc, p.r("threshold"),
                                    derive_seed(seed, index++)));
    }
  }
  write_decode_points(points, out, "noise");
  summary["points"] = points.size();
}

void run_hex(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  const HexSystem sys(p.ints("m"), p.positive("D"), derive_seed(seed, 0));
  const auto heat = hex_heatmap(sys, p.r("lo"), p.r("hi"), p.r("step"));
  {
    auto f = out.open("hex_heatmap.csv");
    CsvWriter csv(f);
    csv.header({"x", "y", "similarity"});
    for (const auto& h : heat) csv.row({h.x, h.y, h.similarity});
  }
  auto f = out.open("hex_states.csv");
  CsvWriter csv(f);
  csv.header({"m", "hex_states", "enumerated_hex_states", "square_states", "hex_entropy_bits",
              "square_entropy_bits", "hex_codebook", "square_codebook"});
  const auto max_m = static_cast<std::int64_t>(p.positive("max_m"));
  for (std::int64_t m = 1; m <= max_m; ++m) {
    csv.row({m, hex_state_count(m), enumerate_hex_states(m), square_state_count(m),
             code_entropy(hex_state_count(m)), code_entropy(square_state_count(m)), hex_codebook_size(m),
             square_codebook_size(m)});
  }
  summary["range"] = sys.range();
  summary["heatmap_points"] = heat.size();
}

void run_subint(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  const auto moduli = moduli_near(p.r("range"), p.positive("K"));
  const auto dim = p.positive("D");
  const int r = static_cast<int>(p.positive("r"));
  const int trials = static_cast<int>(p.positive("trials"));
  const ResonatorConfig rc = p.resonator();
  std::vector<SubIntegerPoint> points;
  std::uint64_t index = 0;
  for (const double kappa : p.kappas("kappas")) {
    points.push_back(sub_integer_point(moduli, dim, r, kappa, trials, rc, derive_seed(seed, index++)));
  }
  {
    auto jl = out.open("subint.jsonl");
    for (const auto& pt : points) jl << to_json_line(pt) << "\n";
  }
  auto f = out.open("subint.csv");
  CsvWriter csv(f);
  csv.header({"D", "M", "r", "kappa", "trials", "accuracy", "search_space", "bits_per_vector"});
  for (const auto& pt : points) {
    csv.row({static_cast<std::int64_t>(pt.dim), pt.range, static_cast<std::int64_t>(pt.partitions),
             kappa_text(pt.kappa), static_cast<std::int64_t>(pt.trials), pt.accuracy, pt.search_space,
             pt.bits_per_vector});
  }
  summary["points"] = points.size();
}

void run_subset_sum(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  ResonatorConfig rc = p.resonator();
  const std::string instance_path = p.s("instance");
  if (!instance_path.empty()) {
    std::ifstream in(instance_path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + instance_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const SubsetSumInstance inst = instance_from_json(ss.str());
    const auto dims = p.ints("dims");
    if (dims.empty() || dims[0] < 1) throw ValidationError("dims must hold a positive dimension");
    const ResidueSystem sys(consecutive_triple_moduli(p.i("m")), static_cast<std::size_t>(dims[0]),
                            derive_seed(seed, 0));
    rc.seed = derive_seed(seed, 1);
    const SubsetSumResult r = solve(inst, sys, rc);
    auto jl = out.open("subset_sum_result.jsonl");
    jl << result_to_json_line(r) << "\n";
    summary["success"] = r.success;
    return;
  }

  SubsetSumBenchmarkConfig c;
  c.sizes.clear();
  for (auto n : p.ints("sizes")) {
    if (n < 1) throw ValidationError("sizes must be positive");
    c.sizes.push_back(static_cast<std::size_t>(n));
  }
  c.dims.clear();
  for (auto d : p.ints("dims")) {
    if (d < 1) throw ValidationError("dims must be positive");
    c.dims.push_back(static_cast<std::size_t>(d));
  }
  if (c.sizes.empty() || c.dims.empty()) throw ValidationError("sizes and dims must be non-empty");
  c.m = p.i("m");
  c.trials = static_cast<int>(p.positive("trials"));
  c.resonator = rc;
  c.seed = seed;
  const auto rows = benchmark(c);

  {
    auto jl = out.open("subset_sum.jsonl");
    for (const auto& row : rows) {
      Json j;
      j["set_size"] = row.set_size;
      j["D"] = row.dim;
      j["moduli"] = row.moduli;
      j["trials"] = row.trials;
      j["first_attempt_accuracy"] = row.first_attempt_accuracy;
      j["accuracy"] = row.accuracy;
      j["mean_evaluations"] = row.mean_evaluations;
      j["expected_evaluations"] = row.expected_evaluations;
      j["mean_iterations"] = row.mean_iterations;
      j["brute_force_iterations"] = row.brute_force_iterations;
      jl << j.dump() << "\n";
    }
  }
  auto f = out.open("subset_sum_restarts.csv");
  CsvWriter csv(f);
  csv.header({"set_size", "D", "attempts", "observed", "independent", "sigma"});
  for (const auto& row : rows) {
    for (std::size_t t = 0; t < row.success_within.size(); ++t) {
      const double pred = 1.0 - std::pow(1.0 - row.first_attempt_accuracy, static_cast<double>(t + 1));
      csv.row({static_cast<std::int64_t>(row.set_size), static_cast<std::int64_t>(row.dim),
               static_cast<std::int64_t>(t + 1), row.success_within[t], pred,
               std::sqrt(pred * (1.0 - pred) / row.trials)});
    }
  }
  summary["rows"] = rows.size();
}

void run_scene(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  SceneExperimentConfig c;
  c.dim = p.positive("D");
  c.scenes = p.positive("scenes");
  c.objects.objects = p.positive("objects");
  c.objects.channels = p.positive("channels");
  c.objects.features_per_object = p.positive("features");
  c.objects.frame = static_cast<std::int64_t>(p.positive("frame"));
  c.objects.seed = derive_seed(seed, 0);
  c.resonator = p.resonator();
  c.seed = seed;

  std::vector<FeatureMaps> objects;
  const std::string corpus = p.s("objects_file");
  if (corpus.empty()) {
    objects = synthetic_objects(c.objects);
  } else {
    std::ifstream in(corpus, std::ios::binary);
    if (!in) throw ParseError("cannot open " + corpus);
    std::ostringstream ss;
    ss << in.rdbuf();
    objects = parse_object_corpus(ss.str(), corpus);
  }
  {
    auto f = out.open("objects.json");
    f << dump_object_corpus(objects);
  }
  const SceneExperimentResult r = scene_experiment(c, objects);
  {
    auto jl = out.open("scene.jsonl");
    for (const auto& t : r.trials) {
      Json j;
      j["object"] = t.object;
      j["x"] = t.x;
      j["y"] = t.y;
      for (const auto& [name, d] : {std::pair{"standard", &t.standard}, std::pair{"residue", &t.residue}}) {
        j[name] = {{"success", d->success}, {"object", d->object}, {"x", d->x}, {"y", d->y},
                   {"evaluations", d->evaluations}, {"attempts", d->attempts}};
      }
      jl << j.dump() << "\n";
    }
  }
  summary["standard_vectors"] = r.standard_vectors;
  summary["residue_vectors"] = r.residue_vectors;
  summary["standard_accuracy"] = r.standard_accuracy;
  summary["residue_accuracy"] = r.residue_accuracy;
  summary["standard_mean_evaluations"] = r.standard_mean_evaluations;
  summary["residue_mean_evaluations"] = r.residue_mean_evaluations;
  summary["brute_force_evaluations"] = r.brute_force_evaluations;
}

void run_baselines(const Params& p, std::uint64_t seed, Outputs& out, Json& summary) {
  const auto tdim = p.positive("thermometer_D");
  const auto fdim = p.positive("float_D");
  const auto width = p.positive("width");
  {
    std::vector<KernelPoint> curve;
    const auto base = thermometer_encode(0, tdim);
    for (std::int64_t d = 0; d <= static_cast<std::int64_t>(tdim); ++d) {
      const double e = cosine(base, thermometer_encode(d, tdim));
      const double a = thermometer_kernel(d, tdim);
      curve.push_back({static_cast<double>(d), e, a, std::abs(e - a)});
    }
    auto f = out.open("thermometer.csv");
    write_kernel_csv(f, curve);
  }
  {
    std::vector<KernelPoint> curve;
    const auto base = float_encode(0, fdim, width);
    for (std::int64_t d = 0; d < float_levels(fdim, width); ++d) {
      const double e = float_overlap(base, float_encode(d, fdim, width), width);
      const double a = float_kernel(d, width);
      curve.push_back({static_cast<double>(d), e, a, std::abs(e - a)});
    }
    auto f = out.open("float.csv");
    write_kernel_csv(f, curve);
  }
  const auto scatter = scatter_curve(p.positive("scatter_D"), p.r("p"), p.i("max_delta"),
                                     p.positive("seeds"), derive_seed(seed, 0));
  {
    std::vector<KernelPoint> curve;
    for (const auto& s : scatter) {
      curve.push_back({static_cast<double>(s.delta), s.mean, s.expected, std::abs(s.mean - s.expected)});
    }
    auto f = out.open("scatter.csv");
    write_kernel_csv(f, curve);
  }
  {
    auto f = out.open("scatter_stats.csv");
    CsvWriter csv(f);
    csv.header({"delta", "mean", "standard_error", "expected"});
    for (const auto& s : scatter) csv.row({s.delta, s.mean, s.standard_error, s.expected});
  }
  std::vector<double> xs, ys;
  for (const auto& s : scatter) {
    xs.push_back(static_cast<double>(s.delta));
    ys.push_back(s.mean);
  }
  Json fits = Json::array();
  for (const auto& fit : fit_all_kernels(xs, ys)) {
    fits.push_back({{"family", to_string(fit.family)}, {"params", fit.params}, {"mse", fit.mse}});
  }
  {
    auto f = out.open("kernel_fits.json");
    f << fits.dump(2) << "\n";
  }
  summary["fits"] = fits;
}

std::string describe(const std::string& command) {
  static const std::map<std::string, std::string> d{
      {"kernel", "empirical vs closed-form similarity kernel"},
      {"capacity", "decode accuracy over growing range M; capacity C(D)"},
      {"noise", "decode accuracy under von Mises phase noise"},
      {"hex", "hexagonal similarity heatmap and state-count table"},
      {"subint", "sub-integer decoding accuracy and bits per vector"},
      {"subset-sum", "subset sum by factorization: restart curves or one instance"},
      {"scene", "scene factorization, standard vs residue codebooks"},
      {"baselines", "thermometer, float and scatter code kernels with fits"}};
  return d.at(command);
}

using Runner = void (*)(const Params&, std::uint64_t, Outputs&, Json&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> r{
      {"kernel", &run_kernel},         {"capacity", &run_capacity}, {"noise", &run_noise},
      {"hex", &run_hex},               {"subint", &run_subint},     {"subset-sum", &run_subset_sum},
      {"scene", &run_scene},           {"baselines", &run_baselines}};
  return r;
}

}  // namespace

const std::map<std::string, std::vector<Param>>& schemas() {
  static const std::map<std::string, std::vector<Param>> s{
      {"kernel",
       {{"m", T::kIntList, Json::array({5}), "modulus (several: product kernel of a residue system)"},
        {"D", T::kInt, 50000, "vector dimension"},
        {"lo", T::kReal, -8.0, "grid start"},
        {"hi", T::kReal, 8.0, "grid end"},
        {"step", T::kReal, 0.1, "grid step"}}},
      {"capacity",
       with_resonator({{"D", T::kInt, 512, "vector dimension"},
                       {"K", T::kInt, 2, "number of consecutive-prime moduli"},
                       {"trials", T::kInt, 100, "random x per range"},
                       {"kappa", T::kKappa, "inf", "von Mises concentration"},
                       {"threshold", T::kReal, 0.95, "capacity accuracy threshold"},
                       {"stop_threshold", T::kReal, 0.5, "stop once accuracy drops below"},
                       {"start_range", T::kReal, 100.0, "first target M"},
                       {"growth", T::kReal, 1.3, "geometric step in target M"},
                       {"max_range", T::kReal, 1e7, "largest target M"}},
                      0)},
      {"noise",
       with_resonator({{"D", T::kInt, 512, "vector dimension"},
                       {"K", T::kInt, 2, "number of consecutive-prime moduli"},
                       {"kappas", T::kKappaList, Json::array({"inf", 16.0, 4.0, 1.0}), "noise levels"},
                       {"ranges", T::kRealList, Json::array({100.0, 300.0, 1000.0, 3000.0, 10000.0}),
                        "target ranges M"},
                       {"trials", T::kInt, 100, "random x per point"},
                       {"threshold", T::kReal, 0.95, "capacity accuracy threshold"}},
                      0)},
      {"hex",
       {{"m", T::kIntList, Json::array({3, 5}), "moduli of the hexagonal system"},
        {"D", T::kInt, 2000, "vector dimension"},
        {"lo", T::kReal, -8.0, "heatmap grid start"},
        {"hi", T::kReal, 8.0, "heatmap grid end"},
        {"step", T::kReal, 0.25, "heatmap grid step"},
        {"max_m", T::kInt, 12, "largest m in the state-count table"}}},
      {"subint",
       with_resonator({{"D", T::kInt, 512, "vector dimension"},
                       {"K", T::kInt, 2, "number of consecutive-prime moduli"},
                       {"range", T::kReal, 1000.0, "target range M"},
                       {"r", T::kInt, 4, "partitions per integer"},
                       {"kappas", T::kKappaList, Json::array({"inf", 16.0, 4.0, 1.0}), "noise levels"},
                       {"trials", T::kInt, 200, "random rationals per point"}},
                      0)},
      {"subset-sum",
       with_resonator({{"sizes", T::kIntList, Json::array({6, 8, 10}), "set sizes |S|"},
                       {"dims", T::kIntList, Json::array({1024, 2048}), "vector dimensions"},
                       {"m", T::kInt, 200, "centre of the moduli triple {m-1, m, m+1}"},
                       {"trials", T::kInt, 50, "instances per cell"},
                       {"instance", T::kString, "", "solve this instance file instead (first D of dims)"}},
                      19)},
      {"scene",
       with_resonator({{"D", T::kInt, 10000, "vector dimension"},
                       {"scenes", T::kInt, 50, "number of scenes"},
                       {"objects", T::kInt, 10, "synthetic objects"},
                       {"channels", T::kInt, 16, "synthetic feature channels"},
                       {"features", T::kInt, 12, "coefficients per synthetic object"},
                       {"frame", T::kInt, 8, "canonical frame size"},
                       {"objects_file", T::kString, "", "object corpus JSON (replaces synthetic)"}},
                      10)},
      {"baselines",
       {{"thermometer_D", T::kInt, 100, "thermometer dimension"},
        {"float_D", T::kInt, 100, "float code dimension"},
        {"width", T::kInt, 10, "float code width"},
        {"scatter_D", T::kInt, 1000, "scatter code dimension"},
        {"p", T::kReal, 0.05, "scatter flip probability"},
        {"max_delta", T::kInt, 30, "largest scatter level offset"},
        {"seeds", T::kInt, 50, "scatter chains averaged"}}},
  };
  return s;
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : schemas()) out.push_back(name);
  return out;
}

Json coerce(const Param& p, const Json& value) {
  if (!is_list(p.type)) return coerce_scalar(p, p.type, value);
  const ParamType et = element_type(p.type);
  Json out = Json::array();
  if (value.is_array()) {
    for (const auto& v : value) out.push_back(coerce_scalar(p, et, v));
  } else {
    out.push_back(coerce_scalar(p, et, value));
  }
  return out;
}

Json coerce_flag(const Param& p, std::string_view text) {
  if (!is_list(p.type)) return parse_scalar_text(p, p.type, text);
  const ParamType et = element_type(p.type);
  Json out = Json::array();
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_scalar_text(p, et, piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Json parse_config_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (!j.contains("version")) throw ValidationError("config is missing \"version\"");
  if (j["version"] != kConfigVersion) {
    throw ValidationError("config version " + j["version"].dump() + " is not supported (expected " +
                          std::to_string(kConfigVersion) + ")");
  }
  const auto& s = schemas();
  for (const auto& [key, value] : j.items()) {
    if (key == "version") continue;
    if (key == "seed") {
      as_u64(value, "config seed");
      continue;
    }
    const auto it = s.find(key);
    if (it == s.end()) throw ValidationError("config: unknown key \"" + key + "\"");
    if (!value.is_object()) throw ValidationError("config: section \"" + key + "\" must be an object");
    for (const auto& [name, v] : value.items()) {
      const auto p = std::find_if(it->second.begin(), it->second.end(),
                                  [&](const Param& q) { return q.name == name; });
      if (p == it->second.end()) {
        throw ValidationError("config: unknown key \"" + key + "." + name + "\"");
      }
      coerce(*p, v);
    }
  }
  return j;
}

Json resolve_config(const std::string& command, const Json& file,
                    const std::map<std::string, std::string>& flags,
                    std::optional<std::uint64_t> seed_flag) {
  const auto it = schemas().find(command);
  if (it == schemas().end()) throw ValidationError("unknown command \"" + command + "\"");
  Json params = Json::object();
  for (const auto& p : it->second) params[p.name] = coerce(p, p.fallback);
  if (file.is_object() && file.contains(command)) {
    for (const auto& p : it->second) {
      if (file[command].contains(p.name)) params[p.name] = coerce(p, file[command][p.name]);
    }
  }
  for (const auto& [name, text] : flags) {
    const auto p = std::find_if(it->second.begin(), it->second.end(),
                                [&](const Param& q) { return q.name == name; });
    if (p == it->second.end()) throw ValidationError("unknown option --" + name);
    params[name] = coerce_flag(*p, text);
  }
  std::uint64_t seed = 0;
  if (file.is_object() && file.contains("seed")) seed = as_u64(file["seed"], "config seed");
  if (seed_flag) seed = *seed_flag;

  Json resolved;
  resolved["version"] = kConfigVersion;
  resolved["command"] = command;
  resolved["seed"] = seed;
  resolved["params"] = std::move(params);
  return resolved;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> run(const Json& resolved, const std::string& out_dir) {
  const std::string command = resolved.at("command").get<std::string>();
  const auto runner = runners().find(command);
  if (runner == runners().end()) throw ValidationError("unknown command \"" + command + "\"");
  const std::uint64_t seed = resolved.at("seed").get<std::uint64_t>();

  Outputs out(out_dir);
  Json summary = Json::object();
  runner->second(Params{resolved.at("params")}, seed, out, summary);

  Json manifest;
  manifest["tool"] = "rhc";
  manifest["command"] = command;
  manifest["config"] = resolved;
  manifest["config_hash"] = "fnv1a64:" + fnv1a_hex(resolved.dump());
  manifest["seeds"] = {{"root", seed}, {"derivation", "splitmix64 stream mixing of the root seed"}};
  manifest["versions"] = {{"rhc", kVersion},
                          {"config_schema", kConfigVersion},
                          {"serialization", kSerializationVersion},
                          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  manifest["outputs"] = out.names();
  manifest["summary"] = summary;
  {
    auto f = out.open("manifest.json");
    f << manifest.dump(2) << "\n";
  }
  return out.names();
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Residue hyperdimensional computing experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON config file (flags override it)")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default); results do not depend on it")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "root seed (overrides the config file)");

  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, params] : schemas()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    subs[name] = sub;
    for (const auto& p : params) {
      std::string help = p.help + " [" + type_name(p.type) + ", default " + p.fallback.dump() + "]";
      sub->add_option_function<std::string>(
          "--" + p.name, [&flag_values, name = name, key = p.name](const std::string& v) {
            flag_values[name][key] = v;
          },
          help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  try {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    Json file = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      file = parse_config_file(ss.str());
    }
    const Json resolved = resolve_config(command, file, flag_values[command], seed);
    const auto files = run(resolved, out_dir);
    std::cout << command << ": wrote";
    for (const auto& f : files) std::cout << " " << f;
    std::cout << " to " << out_dir << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rhc::cli
