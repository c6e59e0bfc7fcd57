#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qsep/tensor.hpp"
#include "qsep/tolerances.hpp"

namespace qsep {

/// Unit-norm coefficient tensor. Immutable after construction.
class PureState {
 public:
  const CoefficientTensor& tensor() const { return tensor_; }
  const DimensionProfile& profile() const { return tensor_.profile(); }
  std::size_t dim() const { return tensor_.size(); }
  Complex amp(std::size_t linear) const { return tensor_.amp(linear); }
  Complex amp(std::span<const int> multi) const { return tensor_.amp(multi); }

  /// Scale that was applied to the input tensor to reach unit norm.
  double applied_scale() const { return applied_scale_; }

  Eigen::VectorXcd to_vector() const;

 private:
  friend PureState make_pure_state(const CoefficientTensor&);
  friend PureState make_pure_state_unit(CoefficientTensor, double);

  PureState(CoefficientTensor tensor, double applied_scale)
      : tensor_(std::move(tensor)), applied_scale_(applied_scale) {}

  CoefficientTensor tensor_;
  double applied_scale_;
};

/// Rescales the tensor to unit norm. Throws AllZeroTensor when the squared
/// norm is below tol::kZeroNorm, and Error when any amplitude is not finite.
PureState make_pure_state(const CoefficientTensor& tensor);

std::complex<double> inner_product(const PureState& a, const PureState& b);

/// a + lambda * b, renormalized.
PureState combine(const PureState& a, Complex lambda, const PureState& b);

/// Multiplies every amplitude by the phase that makes the largest-magnitude
/// amplitude (first such index on ties) real and positive.
PureState canonical_phase(const PureState& state);

/// Basis vector |multi>.
PureState basis_state(const DimensionProfile& profile, std::span<const int> multi);

/// Unit-norm outer product of per-mode vectors.
PureState product_state(const DimensionProfile& profile,
                        std::span<const std::vector<Complex>> factors);

/// (1/sqrt N) sum_i |i,i,...,i> with N the smallest mode dimension.
PureState maximally_entangled_state(const DimensionProfile& profile);

/// Full total_dim x total_dim density matrix. Construction validates
/// Hermiticity and unit trace; positivity is checked spectrally by
/// rank2_eigendecompose.
class DensityMatrix {
 public:
  DensityMatrix(DimensionProfile profile, Eigen::MatrixXcd entries);

  const DimensionProfile& profile() const { return profile_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

 private:
  DimensionProfile profile_;
  Eigen::MatrixXcd entries_;
};

/// Convex mixture sum_i weight_i |state_i><state_i|.
DensityMatrix mixture(std::span<const std::pair<double, PureState>> parts);

/// rho = p |E1><E1| + q |E2><E2| with q = 1 - p. The eigenvectors are stored
/// with canonical phases; construction checks orthogonality and 0 < p < 1.
class RankTwoState {
 public:
  RankTwoState(double p, const PureState& e1, const PureState& e2);

  double p() const { return p_; }
  double q() const { return 1.0 - p_; }
  const PureState& e1() const { return e1_; }
  const PureState& e2() const { return e2_; }
  const DimensionProfile& profile() const { return e1_.profile(); }

  DensityMatrix to_density_matrix() const;

 private:
  double p_;
  PureState e1_, e2_;
};

/// Deterministic Hermitian eigendecomposition restricted to rank two.
/// Returns the two dominant eigenpairs with p >= q, renormalized so that
/// p + q = 1. Throws InvalidDensityMatrix on significantly negative
/// eigenvalues, NotRankTwo when a third eigenvalue exceeds
/// rank_tol * lambda_max, RankOne when the second one does not reach it.
RankTwoState rank2_eigendecompose(const DensityMatrix& rho,
                                  double rank_tol = tol::kRank);

/// Applies one unitary per mode: |psi'> = (U_1 x ... x U_M)|psi> with
/// a'[.., j, ..] = sum_i U_k(j, i) a[.., i, ..] on mode k.
PureState apply_local_unitaries(const PureState& state,
                                std::span<const Eigen::MatrixXcd> unitaries);

}  // namespace qsep
