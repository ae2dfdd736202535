#include "rhc/codebook.hpp"

#include <cmath>
#include <set>
#include <string>

#include "rhc/errors.hpp"

namespace rhc {

Codebook::Codebook(std::vector<std::int64_t> labels, std::span<const DenseVector> entries)
    : labels_(std::move(labels)) {
  if (labels_.size() != entries.size()) throw ValidationError("one label per codebook entry");
  if (entries.empty()) throw ValidationError("codebook must not be empty");
  if (std::set<std::int64_t>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw ValidationError("codebook labels must be unique");
  }
  dim_ = entries.front().size();
  re_.resize(entries.size() * dim_);
  im_.resize(entries.size() * dim_);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != dim_) {
      throw DimensionMismatch("codebook entry " + std::to_string(i) + " has dim " +
                              std::to_string(entries[i].size()));
    }
    for (std::size_t d = 0; d < dim_; ++d) {
      const Complex z = entries[i][d];
      if (std::abs(std::abs(z) - 1.0) > 1e-9) {
        throw ValidationError("codebook entry " + std::to_string(i) + " is not unit-magnitude");
      }
      re_[i * dim_ + d] = z.real();
      im_[i * dim_ + d] = z.imag();
    }
  }
}

Codebook Codebook::from_exact(std::vector<std::int64_t> labels,
                              std::span<const ExactVector> entries) {
  std::vector<DenseVector> dense;
  dense.reserve(entries.size());
  for (const auto& e : entries) dense.push_back(to_dense(e));
  return Codebook(std::move(labels), dense);
}

DenseVector Codebook::entry(std::size_t i) const {
  if (i >= size()) throw ParameterError("codebook index out of range");
  DenseVector out(dim_);
  for (std::size_t d = 0; d < dim_; ++d) out[d] = {re_[i * dim_ + d], im_[i * dim_ + d]};
  return out;
}

}  // namespace rhc
