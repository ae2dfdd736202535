#pragma once

// Multi-dimensional encodings: Cartesian Z^n as a Hadamard product of
// per-axis residue encodings, and the hexagonal system that projects the
// plane onto three directions at 120 degrees with the frame
//
//   Psi = [[-sqrt(3)/2, -1/2], [sqrt(3)/2, -1/2], [0, 1]].
//
// The three directional bases are sampled so their phase indices sum to 0
// (mod m), hence z(y + (1, 1, 1)) == z(y): every 3-D coordinate has a
// non-negative equivalent.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rhc/codebook.hpp"
#include "rhc/phasor.hpp"
#include "rhc/residue.hpp"
#include "rhc/resonator.hpp"

namespace rhc {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Coord3 = std::array<std::int64_t, 3>;

// z(x) = z_1(x_1) (.) ... (.) z_n(x_n) with independent per-axis systems.
ExactVector encode_cartesian(std::span<const ResidueSystem> axes, std::span<const std::int64_t> x);

// Rows of Psi.
const std::array<Vec2, 3>& hex_frame();
Vec3 hex_project(const Vec2& x);

// Direction bases for one modulus: per component (u1, u2, u3) uniform over
// triples with u1 + u2 + u3 == 0 (mod m).
std::array<ModulusBase, 3> sample_hex_base(std::int64_t m, std::size_t dim, std::uint64_t seed);

class HexSystem {
 public:
  // One constrained triplet per (pairwise co-prime) modulus; triplet k uses
  // seed derive_seed(seed, k).
  HexSystem(std::vector<std::int64_t> moduli, std::size_t dim, std::uint64_t seed);

  [[nodiscard]] std::span<const std::int64_t> moduli() const noexcept { return moduli_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::int64_t range() const noexcept { return range_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] const std::array<ModulusBase, 3>& triplet(std::size_t k) const { return triplets_.at(k); }

 private:
  std::vector<std::int64_t> moduli_;
  std::size_t dim_ = 0;
  std::int64_t range_ = 1;
  std::uint64_t seed_ = 0;
  std::vector<std::array<ModulusBase, 3>> triplets_;
};

// Integer 3-D coordinate, period M.
ExactVector encode_hex(const HexSystem& sys, const Coord3& y);
// Plane point: nearest lattice state after projection (ties to the
// lexicographically smallest canonical coordinate).
ExactVector encode_hex(const HexSystem& sys, const Vec2& x);
// Fractional power encoding of Psi x (smooth kernel, used for heatmaps).
DenseVector encode_hex_continuous(const HexSystem& sys, const Vec2& x);

// Shift by a multiple of (1, 1, 1) so the smallest coordinate is 0.
Coord3 canonical_hex(const Coord3& y);
// Integer coordinate whose projection onto the plane sum(y) = 0 is nearest
// to Psi x, canonicalized.
Coord3 nearest_hex_coordinate(const Vec2& x);

// 3m^2 - 3m + 1 and m^2 states; 3m and 2m codebook vectors.
std::int64_t hex_state_count(std::int64_t m);
std::int64_t square_state_count(std::int64_t m);
std::int64_t hex_codebook_size(std::int64_t m);
std::int64_t square_codebook_size(std::int64_t m);
double code_entropy(std::int64_t states);
// Exhaustive count of the classes of {0..m-1}^3 under integer (1, 1, 1)
// shifts, i.e. the distinct differences (y1 - y3, y2 - y3).
std::int64_t enumerate_hex_states(std::int64_t m);

// Similarity of z(0) with z(x) for x on the grid [lo, hi]^2 with the given
// step; CSV columns x, y, similarity.
struct HeatmapPoint {
  double x = 0, y = 0, similarity = 0;
};
std::vector<HeatmapPoint> hex_heatmap(const HexSystem& sys, double lo, double hi, double step);
void write_heatmap_csv(const std::string& path, std::span<const HeatmapPoint> points);

// Decoding: resonator over the three directional codebooks of each modulus
// (codebook k holds z_k(0..m-1)), residues combined per direction by CRT,
// then canonicalized modulo (1, 1, 1) shifts.
std::vector<Codebook> build_hex_codebooks(const HexSystem& sys);

struct HexDecode {
  bool success = false;
  Coord3 coordinate{};  // canonical
  std::uint64_t evaluations = 0;
};
HexDecode decode_hex(const HexSystem& sys, std::span<const Complex> v, const ResonatorConfig& config);

}  // namespace rhc
