#include "rhc/hex.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "rhc/csv.hpp"
#include "rhc/errors.hpp"
#include "rhc/random.hpp"

namespace rhc {

ExactVector encode_cartesian(std::span<const ResidueSystem> axes, std::span<const std::int64_t> x) {
  if (axes.size() != x.size()) throw DimensionMismatch("one coordinate per axis system");
  if (axes.empty()) throw ParameterError("need at least one axis");
  ExactVector out = encode(axes[0], x[0]);
  for (std::size_t a = 1; a < axes.size(); ++a) {
    if (axes[a].dim() != axes[0].dim()) throw DimensionMismatch("axis systems differ in dimension");
    out = hadamard(out, encode(axes[a], x[a]));
  }
  return out;
}

const std::array<Vec2, 3>& hex_frame() {
  static const std::array<Vec2, 3> psi{{{-std::numbers::sqrt3 / 2.0, -0.5},
                                        {std::numbers::sqrt3 / 2.0, -0.5},
                                        {0.0, 1.0}}};
  return psi;
}

Vec3 hex_project(const Vec2& x) {
  const auto& psi = hex_frame();
  Vec3 y{};
  for (std::size_t k = 0; k < 3; ++k) y[k] = psi[k][0] * x[0] + psi[k][1] * x[1];
  return y;
}

std::array<ModulusBase, 3> sample_hex_base(std::int64_t m, std::size_t dim, std::uint64_t seed) {
  if (m < 2) throw ParameterError("hex bases need m >= 2");
  if (dim == 0) throw ParameterError("dimension must be positive");
  std::array<ModulusBase, 3> bases;
  for (std::size_t k = 0; k < 3; ++k) {
    bases[k].modulus = m;
    bases[k].dim = dim;
    bases[k].seed = seed;
    bases[k].nonzero_only = false;
    bases[k].phase_indices.resize(dim);
  }
  // (u1, u2) uniform on Z_m^2 fixes u3; this is uniform on the constraint set.
  Rng rng(seed);
  const auto um = static_cast<std::uint64_t>(m);
  for (std::size_t j = 0; j < dim; ++j) {
    const auto u1 = static_cast<std::int64_t>(rng.below(um));
    const auto u2 = static_cast<std::int64_t>(rng.below(um));
    bases[0].phase_indices[j] = u1;
    bases[1].phase_indices[j] = u2;
    bases[2].phase_indices[j] = mod(-(u1 + u2), m);
  }
  return bases;
}

HexSystem::HexSystem(std::vector<std::int64_t> moduli, std::size_t dim, std::uint64_t seed)
    : moduli_(std::move(moduli)), dim_(dim), seed_(seed) {
  if (moduli_.empty()) throw ParameterError("hex system needs at least one modulus");
  require_coprime(moduli_);
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    range_ *= moduli_[k];
    triplets_.push_back(sample_hex_base(moduli_[k], dim, derive_seed(seed, k)));
  }
}

ExactVector encode_hex(const HexSystem& sys, const Coord3& y) {
  const std::int64_t big_m = sys.range();
  std::vector<std::int64_t> idx(sys.dim(), 0);
  for (std::size_t k = 0; k < sys.moduli().size(); ++k) {
    const std::int64_t m = sys.moduli()[k];
    const std::int64_t scale = big_m / m;
    const auto& tri = sys.triplet(k);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::int64_t r = 0;
      for (std::size_t a = 0; a < 3; ++a) {
        r = mod(r + mulmod(tri[a].phase_indices[j], mod(y[a], m), m), m);
      }
      idx[j] = (idx[j] + mulmod(r, scale, big_m)) % big_m;
    }
  }
  return ExactVector(big_m, std::move(idx));
}

Coord3 canonical_hex(const Coord3& y) {
  const std::int64_t lo = std::min({y[0], y[1], y[2]});
  return {y[0] - lo, y[1] - lo, y[2] - lo};
}

Coord3 nearest_hex_coordinate(const Vec2& x) {
  const Vec3 y = hex_project(x);
  Coord3 best{};
  double best_d = std::numeric_limits<double>::infinity();
  // With shifts along (1, 1, 1) free, the optimum rounds each coordinate
  // down or up, so the eight floor/ceil combinations cover it.
  for (unsigned mask = 0; mask < 8; ++mask) {
    Coord3 n{};
    Vec3 e{};
    double s = 0.0, ss = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      n[k] = static_cast<std::int64_t>(std::floor(y[k])) + ((mask >> k) & 1U);
      e[k] = static_cast<double>(n[k]) - y[k];
      s += e[k];
      ss += e[k] * e[k];
    }
    const double d = ss - s * s / 3.0;
    const Coord3 c = canonical_hex(n);
    if (d < best_d - 1e-12 || (std::abs(d - best_d) <= 1e-12 && c < best)) {
      best_d = std::min(d, best_d);
      best = c;
    }
  }
  return best;
}

ExactVector encode_hex(const HexSystem& sys, const Vec2& x) {
  return encode_hex(sys, nearest_hex_coordinate(x));
}

DenseVector encode_hex_continuous(const HexSystem& sys, const Vec2& x) {
  const Vec3 y = hex_project(x);
  DenseVector out(sys.dim(), Complex{1.0, 0.0});
  for (std::size_t k = 0; k < sys.moduli().size(); ++k) {
    const std::int64_t m = sys.moduli()[k];
    const auto& tri = sys.triplet(k);
    for (std::size_t j = 0; j < out.size(); ++j) {
      double t = 0.0;  // phase in units of pi
      for (std::size_t a = 0; a < 3; ++a) {
        t += 2.0 * static_cast<double>(centered_residue(tri[a].phase_indices[j], m)) * y[a] /
             static_cast<double>(m);
      }
      t = std::remainder(t, 2.0);
      out[j] *= Complex{cos_pi(t), sin_pi(t)};
    }
  }
  return out;
}

std::int64_t hex_state_count(std::int64_t m) {
  if (m < 1) throw ParameterError("m must be >= 1");
  return 3 * m * m - 3 * m + 1;
}
std::int64_t square_state_count(std::int64_t m) {
  if (m < 1) throw ParameterError("m must be >= 1");
  return m * m;
}
std::int64_t hex_codebook_size(std::int64_t m) { return 3 * m; }
std::int64_t square_codebook_size(std::int64_t m) { return 2 * m; }

double code_entropy(std::int64_t states) {
  if (states < 1) throw ParameterError("state count must be >= 1");
  return std::log2(static_cast<double>(states));
}

std::int64_t enumerate_hex_states(std::int64_t m) {
  if (m < 1) throw ParameterError("m must be >= 1");
  std::set<std::pair<std::int64_t, std::int64_t>> classes;
  for (std::int64_t a = 0; a < m; ++a) {
    for (std::int64_t b = 0; b < m; ++b) {
      for (std::int64_t c = 0; c < m; ++c) classes.emplace(a - c, b - c);
    }
  }
  return static_cast<std::int64_t>(classes.size());
}

std::vector<HeatmapPoint> hex_heatmap(const HexSystem& sys, double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ParameterError("heatmap grid needs lo <= hi and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<HeatmapPoint> out(n * n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n * n; ++i) {
    const double x = lo + static_cast<double>(i % n) * step;
    const double y = lo + static_cast<double>(i / n) * step;
    const DenseVector v = encode_hex_continuous(sys, {x, y});
    double s = 0.0;
    for (const auto& c : v) s += c.real();
    out[i] = {x, y, s / static_cast<double>(v.size())};
  }
  return out;
}

void write_heatmap_csv(const std::string& path, std::span<const HeatmapPoint> points) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  CsvWriter csv(file);
  csv.header({"x", "y", "similarity"});
  for (const auto& p : points) csv.row({p.x, p.y, p.similarity});
}

std::vector<Codebook> build_hex_codebooks(const HexSystem& sys) {
  std::vector<Codebook> out;
  for (std::size_t k = 0; k < sys.moduli().size(); ++k) {
    const std::int64_t m = sys.moduli()[k];
    for (const auto& base : sys.triplet(k)) {
      std::vector<std::int64_t> labels(static_cast<std::size_t>(m));
      std::vector<ExactVector> entries;
      for (std::int64_t r = 0; r < m; ++r) {
        labels[static_cast<std::size_t>(r)] = r;
        entries.push_back(encode_integer(base, r));
      }
      out.push_back(Codebook::from_exact(std::move(labels), entries));
    }
  }
  return out;
}

HexDecode decode_hex(const HexSystem& sys, std::span<const Complex> v, const ResonatorConfig& config) {
  const auto codebooks = build_hex_codebooks(sys);
  const FactorizeResult f = resonator_factorize(v, codebooks, config);
  const std::size_t kcount = sys.moduli().size();
  Coord3 y{};
  for (std::size_t a = 0; a < 3; ++a) {
    std::vector<std::int64_t> residues(kcount);
    for (std::size_t k = 0; k < kcount; ++k) residues[k] = f.labels[3 * k + a];
    y[a] = crt_reconstruct(residues, sys.moduli());
  }
  // The code only sees y modulo M per axis and modulo (1, 1, 1); report the
  // equivalent with the smallest coordinate sum.
  const std::int64_t big_m = sys.range();
  Coord3 best = y;
  std::int64_t best_sum = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t t = 0; t < big_m; ++t) {
    const Coord3 c{mod(y[0] + t, big_m), mod(y[1] + t, big_m), mod(y[2] + t, big_m)};
    const std::int64_t s = c[0] + c[1] + c[2];
    if (s < best_sum || (s == best_sum && c < best)) {
      best_sum = s;
      best = c;
    }
  }
  HexDecode out;
  out.success = f.success;
  out.coordinate = best;
  out.evaluations = f.total_evaluations;
  return out;
}

}  // namespace rhc
