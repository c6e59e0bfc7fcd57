#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qsep/states.hpp"

namespace qsep {

/// Haar-style random unitary: a square complex Gaussian matrix orthonormalized
/// column by column. Deterministic for a fixed seed.
Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed);

/// Normalized vector of independent standard complex Gaussians.
PureState random_pure_state(const DimensionProfile& profile, std::uint64_t seed);

/// Exact outer product of per-mode random unit vectors.
PureState random_product_state(const DimensionProfile& profile, std::uint64_t seed);

/// Normalized vector of independent standard *real* Gaussians.
PureState random_real_state(const DimensionProfile& profile, std::uint64_t seed);

}  // namespace qsep
