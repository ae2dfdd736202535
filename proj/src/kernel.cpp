#include "rhc/kernel.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

#include "rhc/csv.hpp"
#include "rhc/errors.hpp"

namespace rhc {

double sinc(double x) noexcept {
  if (x == 0.0) return 1.0;
  return sin_pi(x) / (std::numbers::pi * x);
}

double analytic_kernel(std::int64_t m, double dx) {
  if (m < 2) throw ParameterError("analytic_kernel needs m >= 2");
  const double md = static_cast<double>(m);
  // Kernel is m-periodic; evaluate at the representative t in [-m/2, m/2].
  const double t = std::remainder(dx, md);
  const double s = sin_pi(t / md);
  if (std::abs(s) < 1e-8) {
    // Removable singularity at t = 0: both branches tend to sinc(t).
    return sinc(t);
  }
  const double num = sin_pi(t) / md;
  if (m % 2 == 0) return num * cos_pi(t / md) / s;
  return num / s;
}

double sinc_comb(std::int64_t m, double dx, std::int64_t n_terms) {
  if (n_terms < 1) throw ParameterError("sinc_comb needs n_terms >= 1");
  const double md = static_cast<double>(m);
  // Pair +s and -s terms, summing the small tails first.
  double acc = 0.0;
  for (std::int64_t s = n_terms; s >= 1; --s) {
    const double sd = static_cast<double>(s);
    acc += sinc(dx - md * sd) + sinc(dx + md * sd);
  }
  return acc + sinc(dx);
}

double product_kernel(std::span<const std::int64_t> moduli, double dx) {
  double k = 1.0;
  for (auto m : moduli) k *= analytic_kernel(m, dx);
  return k;
}

namespace {

template <typename Encoder>
std::vector<KernelPoint> sweep(std::span<const double> grid, Encoder&& enc,
                               const std::function<double(double)>& analytic) {
  const DenseVector origin = enc(0.0);
  std::vector<KernelPoint> out(grid.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dx = grid[i];
    const double e = dx == 0.0 ? 1.0 : similarity(origin, enc(dx));
    const double a = analytic(dx);
    out[i] = {dx, e, a, std::abs(e - a)};
  }
  return out;
}

}  // namespace

std::vector<KernelPoint> empirical_kernel(const ModulusBase& base, std::span<const double> grid) {
  return sweep(
      grid, [&](double q) { return encode_rational(base, q); },
      [&](double dx) { return analytic_kernel(base.modulus, dx); });
}

std::vector<KernelPoint> empirical_kernel(const ResidueSystem& sys, std::span<const double> grid) {
  return sweep(
      grid, [&](double q) { return encode_rational(sys, q); },
      [&](double dx) { return product_kernel(sys.moduli(), dx); });
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw ParameterError("invalid grid");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

void write_kernel_csv(std::ostream& out, std::span<const KernelPoint> curve) {
  CsvWriter csv(out);
  csv.header({"dx", "empirical", "analytic", "abs_error"});
  for (const auto& p : curve) csv.row({p.dx, p.empirical, p.analytic, p.abs_error});
}

}  // namespace rhc
