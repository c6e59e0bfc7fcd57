#include "qsep/profile.hpp"

#include <sstream>

#include "qsep/errors.hpp"

namespace qsep {

DimensionProfile::DimensionProfile(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 2) {
    throw DimensionMismatch("a dimension profile needs at least two modes");
  }
  strides_.assign(dims_.size(), 1);
  total_dim_ = 1;
  // Row-major: the last mode varies fastest.
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] < 2) {
      throw DimensionMismatch("every mode dimension must be at least 2, got " +
                              std::to_string(dims_[k]));
    }
    strides_[k] = total_dim_;
    total_dim_ *= static_cast<std::size_t>(dims_[k]);
    if (total_dim_ > kMaxTotalDim) {
      throw DimensionMismatch("total dimension exceeds the dense-storage limit of " +
                              std::to_string(kMaxTotalDim));
    }
  }
}

std::size_t DimensionProfile::linear_index(std::span<const int> multi) const {
  if (multi.size() != dims_.size()) {
    throw DimensionMismatch("multi-index has " + std::to_string(multi.size()) +
                            " entries, profile has " + std::to_string(dims_.size()) +
                            " modes");
  }
  std::size_t linear = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (multi[k] < 0 || multi[k] >= dims_[k]) {
      throw DimensionMismatch("index " + std::to_string(multi[k]) +
                              " out of range for mode " + std::to_string(k) +
                              " of dimension " + std::to_string(dims_[k]));
    }
    linear += static_cast<std::size_t>(multi[k]) * strides_[k];
  }
  return linear;
}

std::vector<int> DimensionProfile::multi_index(std::size_t linear) const {
  std::vector<int> multi(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    multi[k] = static_cast<int>(linear / strides_[k]) % dims_[k];
  }
  return multi;
}

std::string DimensionProfile::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (k) out << ',';
    out << dims_[k];
  }
  out << ']';
  return out.str();
}

}  // namespace qsep
