#include "qsep/tensor.hpp"

#include <cmath>

#include "qsep/errors.hpp"

namespace qsep {

CoefficientTensor::CoefficientTensor(DimensionProfile profile)
    : profile_(std::move(profile)), amps_(profile_.total_dim(), Complex{0.0, 0.0}) {}

CoefficientTensor::CoefficientTensor(DimensionProfile profile, std::vector<Complex> amps)
    : profile_(std::move(profile)), amps_(std::move(amps)) {
  if (amps_.size() != profile_.total_dim()) {
    throw DimensionMismatch("amplitude array has " + std::to_string(amps_.size()) +
                            " entries, profile " + profile_.to_string() + " needs " +
                            std::to_string(profile_.total_dim()));
  }
}

double CoefficientTensor::squared_norm() const {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return s;
}

double CoefficientTensor::max_abs() const {
  double m = 0.0;
  for (const Complex& a : amps_) m = std::max(m, std::abs(a));
  return m;
}

bool CoefficientTensor::finite() const {
  for (const Complex& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  }
  return true;
}

CoefficientTensor product_tensor(const DimensionProfile& profile,
                                 std::span<const std::vector<Complex>> factors) {
  const int modes = profile.mode_count();
  if (static_cast<int>(factors.size()) != modes) {
    throw DimensionMismatch("expected one factor per mode");
  }
  for (int k = 0; k < modes; ++k) {
    if (static_cast<int>(factors[static_cast<std::size_t>(k)].size()) != profile.dim(k)) {
      throw DimensionMismatch("factor for mode " + std::to_string(k) +
                              " has wrong length");
    }
  }
  CoefficientTensor out(profile);
  for (std::size_t linear = 0; linear < profile.total_dim(); ++linear) {
    Complex value{1.0, 0.0};
    for (int k = 0; k < modes; ++k) {
      value *= factors[static_cast<std::size_t>(k)]
                      [static_cast<std::size_t>(profile.digit(linear, k))];
    }
    out.set_amp(linear, value);
  }
  return out;
}

CoefficientTensor permute_modes(const CoefficientTensor& tensor,
                                std::span<const int> perm) {
  const DimensionProfile& in = tensor.profile();
  const int modes = in.mode_count();
  if (static_cast<int>(perm.size()) != modes) {
    throw DimensionMismatch("permutation length does not match mode count");
  }
  std::vector<bool> seen(static_cast<std::size_t>(modes), false);
  std::vector<int> new_dims(static_cast<std::size_t>(modes));
  for (int k = 0; k < modes; ++k) {
    const int src = perm[static_cast<std::size_t>(k)];
    if (src < 0 || src >= modes || seen[static_cast<std::size_t>(src)]) {
      throw DimensionMismatch("perm is not a permutation of the modes");
    }
    seen[static_cast<std::size_t>(src)] = true;
    new_dims[static_cast<std::size_t>(k)] = in.dim(src);
  }
  DimensionProfile out_profile(new_dims);
  CoefficientTensor out(out_profile);
  std::vector<int> src_multi(static_cast<std::size_t>(modes));
  for (std::size_t linear = 0; linear < out_profile.total_dim(); ++linear) {
    for (int k = 0; k < modes; ++k) {
      src_multi[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] =
          out_profile.digit(linear, k);
    }
    out.set_amp(linear, tensor.amp(src_multi));
  }
  return out;
}

}  // namespace qsep
