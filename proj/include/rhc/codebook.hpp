#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rhc/phasor.hpp"

namespace rhc {

// Reference vectors with known labels. Entries are stored row-major with
// split real/imaginary planes so the projection kernels vectorize.
class Codebook {
 public:
  Codebook() = default;
  // Entries must be unit-magnitude (to 1e-9) and labels unique.
  Codebook(std::vector<std::int64_t> labels, std::span<const DenseVector> entries);

  static Codebook from_exact(std::vector<std::int64_t> labels, std::span<const ExactVector> entries);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const std::int64_t> labels() const noexcept { return labels_; }
  [[nodiscard]] std::int64_t label(std::size_t i) const { return labels_.at(i); }

  [[nodiscard]] const double* re_row(std::size_t i) const { return re_.data() + i * dim_; }
  [[nodiscard]] const double* im_row(std::size_t i) const { return im_.data() + i * dim_; }
  [[nodiscard]] DenseVector entry(std::size_t i) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> labels_;
  std::vector<double> re_;
  std::vector<double> im_;
};

}  // namespace rhc
