#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qsep {

/// Everything is stored densely; profiles beyond this product are refused.
inline constexpr std::size_t kMaxTotalDim = 4096;

/// Ordered list of mode dimensions (N_1, ..., N_M) with M >= 2 and every
/// N_k >= 2. Multi-indices are 0-based and linearized row-major: the last
/// mode varies fastest.
class DimensionProfile {
 public:
  explicit DimensionProfile(std::vector<int> dims);

  int mode_count() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const { return dims_[static_cast<std::size_t>(mode)]; }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode)]; }

  /// Row-major linearization of a full multi-index. Bounds-checked.
  std::size_t linear_index(std::span<const int> multi) const;
  /// Inverse of linear_index.
  std::vector<int> multi_index(std::size_t linear) const;
  /// Digit of `linear` on one mode.
  int digit(std::size_t linear, int mode) const {
    return static_cast<int>(linear / stride(mode)) % dim(mode);
  }

  std::string to_string() const;  // "[2,2,3]"

  bool operator==(const DimensionProfile&) const = default;

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 0;
};

}  // namespace qsep
