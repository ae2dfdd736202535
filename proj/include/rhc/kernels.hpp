#pragma once

// Codebook projection Z Z^dagger r, the inner loop of every resonator step.
//
// project_reference is the plain nested loop kept as the test oracle.
// project is the production kernel: blocked accumulators and OpenMP across
// rows (for the coefficients) and across components (for the output). It
// stays serial when already called from inside a parallel region, so
// trial-level parallelism in the experiments is not oversubscribed.

#include <span>

#include "rhc/codebook.hpp"
#include "rhc/phasor.hpp"

namespace rhc::kernels {

// coeffs[k] = sum_d conj(Z[k,d]) * residual[d]
// out[d]    = sum_k coeffs[k] * Z[k,d]
void project_reference(const Codebook& codebook, std::span<const Complex> residual,
                       std::span<Complex> coeffs, std::span<Complex> out);

void project(const Codebook& codebook, std::span<const Complex> residual,
             std::span<Complex> coeffs, std::span<Complex> out);

// Only the coefficients (a codebook decode).
void coefficients(const Codebook& codebook, std::span<const Complex> v, std::span<Complex> coeffs);

}  // namespace rhc::kernels
