#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qsep/profile.hpp"

namespace qsep {

using Complex = std::complex<double>;

/// Dense complex amplitude array a_{i1...iM} over a dimension profile,
/// stored row-major.
class CoefficientTensor {
 public:
  /// Zero tensor on the given profile.
  explicit CoefficientTensor(DimensionProfile profile);
  /// Takes ownership of `amps`; its length must equal total_dim.
  CoefficientTensor(DimensionProfile profile, std::vector<Complex> amps);

  const DimensionProfile& profile() const { return profile_; }
  std::size_t size() const { return amps_.size(); }

  Complex amp(std::size_t linear) const { return amps_[linear]; }
  Complex amp(std::span<const int> multi) const {
    return amps_[profile_.linear_index(multi)];
  }
  void set_amp(std::size_t linear, Complex value) { amps_[linear] = value; }
  void set_amp(std::span<const int> multi, Complex value) {
    amps_[profile_.linear_index(multi)] = value;
  }

  const std::vector<Complex>& amps() const { return amps_; }

  double squared_norm() const;
  double max_abs() const;
  bool finite() const;

 private:
  DimensionProfile profile_;
  std::vector<Complex> amps_;
};

/// Tensor whose amplitudes are the outer product of one vector per mode.
/// Each factor's length must match the corresponding mode dimension.
CoefficientTensor product_tensor(const DimensionProfile& profile,
                                 std::span<const std::vector<Complex>> factors);

/// Re-indexes the tensor so that mode k of the result is mode perm[k] of the
/// input. `perm` must be a permutation of 0..M-1.
CoefficientTensor permute_modes(const CoefficientTensor& tensor,
                                std::span<const int> perm);

}  // namespace qsep
