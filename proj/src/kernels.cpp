#include "rhc/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rhc/errors.hpp"

namespace rhc::kernels {

namespace {

void check_shapes(const Codebook& cb, std::size_t residual, std::size_t coeffs) {
  if (residual != cb.dim()) throw DimensionMismatch("residual dim does not match codebook");
  if (coeffs != cb.size()) throw DimensionMismatch("coefficient buffer does not match codebook");
}

// Work below this many multiply-adds is not worth forking threads for.
constexpr std::size_t kParallelThreshold = 1 << 16;

bool go_parallel(std::size_t work) {
#ifdef _OPENMP
  return work >= kParallelThreshold && !omp_in_parallel() && omp_get_max_threads() > 1;
#else
  (void)work;
  return false;
#endif
}

struct Split {
  std::vector<double> re, im;
  explicit Split(std::span<const Complex> v) : re(v.size()), im(v.size()) {
    for (std::size_t d = 0; d < v.size(); ++d) {
      re[d] = v[d].real();
      im[d] = v[d].imag();
    }
  }
};

// conj(z) . r with four independent partial sums.
Complex conj_dot(const double* zr, const double* zi, const double* rr, const double* ri,
                 std::size_t n) {
  double sr[4] = {0, 0, 0, 0};
  double si[4] = {0, 0, 0, 0};
  std::size_t d = 0;
  for (; d + 4 <= n; d += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      sr[l] += zr[d + l] * rr[d + l] + zi[d + l] * ri[d + l];
      si[l] += zr[d + l] * ri[d + l] - zi[d + l] * rr[d + l];
    }
  }
  for (; d < n; ++d) {
    sr[0] += zr[d] * rr[d] + zi[d] * ri[d];
    si[0] += zr[d] * ri[d] - zi[d] * rr[d];
  }
  return {(sr[0] + sr[1]) + (sr[2] + sr[3]), (si[0] + si[1]) + (si[2] + si[3])};
}

void blocked_coefficients(const Codebook& cb, const Split& r, std::span<Complex> coeffs) {
  const std::size_t rows = cb.size();
  const std::size_t dim = cb.dim();
  const bool par = go_parallel(rows * dim);
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t k = 0; k < rows; ++k) {
    coeffs[k] = conj_dot(cb.re_row(k), cb.im_row(k), r.re.data(), r.im.data(), dim);
  }
}

}  // namespace

void project_reference(const Codebook& codebook, std::span<const Complex> residual,
                       std::span<Complex> coeffs, std::span<Complex> out) {
  check_shapes(codebook, residual.size(), coeffs.size());
  if (out.size() != codebook.dim()) throw DimensionMismatch("output dim does not match codebook");
  for (std::size_t k = 0; k < codebook.size(); ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t d = 0; d < codebook.dim(); ++d) {
      const Complex z{codebook.re_row(k)[d], codebook.im_row(k)[d]};
      acc += std::conj(z) * residual[d];
    }
    coeffs[k] = acc;
  }
  for (std::size_t d = 0; d < codebook.dim(); ++d) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < codebook.size(); ++k) {
      acc += coeffs[k] * Complex{codebook.re_row(k)[d], codebook.im_row(k)[d]};
    }
    out[d] = acc;
  }
}

void coefficients(const Codebook& codebook, std::span<const Complex> v, std::span<Complex> coeffs) {
  check_shapes(codebook, v.size(), coeffs.size());
  blocked_coefficients(codebook, Split(v), coeffs);
}

void project(const Codebook& codebook, std::span<const Complex> residual,
             std::span<Complex> coeffs, std::span<Complex> out) {
  check_shapes(codebook, residual.size(), coeffs.size());
  if (out.size() != codebook.dim()) throw DimensionMismatch("output dim does not match codebook");
  const std::size_t rows = codebook.size();
  const std::size_t dim = codebook.dim();

  blocked_coefficients(codebook, Split(residual), coeffs);

  std::vector<double> cr(rows), ci(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    cr[k] = coeffs[k].real();
    ci[k] = coeffs[k].imag();
  }

  // Components are independent; each block accumulates rows in fixed order.
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (dim + kBlock - 1) / kBlock;
  const bool par = go_parallel(rows * dim);
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(dim, lo + kBlock);
    double acc_re[kBlock] = {};
    double acc_im[kBlock] = {};
    const std::size_t len = hi - lo;
    for (std::size_t k = 0; k < rows; ++k) {
      const double* zr = codebook.re_row(k) + lo;
      const double* zi = codebook.im_row(k) + lo;
      const double a = cr[k];
      const double c = ci[k];
      for (std::size_t d = 0; d < len; ++d) {
        acc_re[d] += a * zr[d] - c * zi[d];
        acc_im[d] += a * zi[d] + c * zr[d];
      }
    }
    for (std::size_t d = 0; d < len; ++d) out[lo + d] = {acc_re[d], acc_im[d]};
  }
}

}  // namespace rhc::kernels
