#pragma once

// Closed-form and empirical similarity kernels of modular phasor encodings.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rhc/phasor.hpp"
#include "rhc/residue.hpp"

namespace rhc {

double sinc(double x) noexcept;

// Infinite-dimension kernel of an encoding modulo m:
//   (1/m) sin(pi x) cot(pi x / m)   for even m,
//   (1/m) sin(pi x) csc(pi x / m)   for odd m,
// with value 1 at x = 0 (mod m).
double analytic_kernel(std::int64_t m, double dx);

// Truncated sum of sinc(dx - m s) over s in [-n_terms, n_terms].
double sinc_comb(std::int64_t m, double dx, std::int64_t n_terms);

// prod_k analytic_kernel(m_k, dx).
double product_kernel(std::span<const std::int64_t> moduli, double dx);

struct KernelPoint {
  double dx = 0.0;
  double empirical = 0.0;
  double analytic = 0.0;
  double abs_error = 0.0;
};

// Similarity between the rational encodings of 0 and dx, for every grid point,
// next to the analytic kernel.
std::vector<KernelPoint> empirical_kernel(const ModulusBase& base, std::span<const double> grid);
std::vector<KernelPoint> empirical_kernel(const ResidueSystem& sys, std::span<const double> grid);

// Evenly spaced points lo, lo + step, ..., up to hi inclusive (within step/2).
std::vector<double> make_grid(double lo, double hi, double step);

// Emits `dx,empirical,analytic,abs_error` rows with "C" locale formatting.
void write_kernel_csv(std::ostream& out, std::span<const KernelPoint> curve);

}  // namespace rhc
