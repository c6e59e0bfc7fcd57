#include "qsep/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsep/errors.hpp"

namespace qsep {

Eigen::VectorXcd PureState::to_vector() const {
  const std::size_t n = tensor_.size();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = tensor_.amp(i);
  return v;
}

PureState make_pure_state(const CoefficientTensor& tensor) {
  if (!tensor.finite()) {
    throw Error("tensor contains non-finite amplitudes");
  }
  const double n2 = tensor.squared_norm();
  if (n2 < tol::kZeroNorm) {
    throw AllZeroTensor("tensor norm " + std::to_string(n2) +
                        " is below the zero threshold");
  }
  // Amplitudes that are already unit-norm within tolerance are kept
  // bit-exact, which makes file round-trips lossless.
  if (std::abs(n2 - 1.0) <= tol::kNorm) {
    return PureState(tensor, 1.0);
  }
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<Complex> amps = tensor.amps();
  for (Complex& a : amps) a *= scale;
  return PureState(CoefficientTensor(tensor.profile(), std::move(amps)), scale);
}

// Norm-preserving transforms keep the amplitudes bit-exact instead of
// renormalizing; the unit-norm invariant is validated, not re-imposed.
PureState make_pure_state_unit(CoefficientTensor tensor, double prior_scale) {
  const double n2 = tensor.squared_norm();
  if (std::abs(n2 - 1.0) > tol::kNorm) {
    throw Error("transform failed to preserve the norm: |psi|^2 = " +
                std::to_string(n2));
  }
  return PureState(std::move(tensor), prior_scale);
}

std::complex<double> inner_product(const PureState& a, const PureState& b) {
  if (a.profile() != b.profile()) {
    throw DimensionMismatch("inner product of states on different profiles");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp(i)) * b.amp(i);
  return s;
}

PureState combine(const PureState& a, Complex lambda, const PureState& b) {
  if (a.profile() != b.profile()) {
    throw DimensionMismatch("combining states on different profiles");
  }
  std::vector<Complex> amps(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) amps[i] = a.amp(i) + lambda * b.amp(i);
  return make_pure_state(CoefficientTensor(a.profile(), std::move(amps)));
}

PureState canonical_phase(const PureState& state) {
  std::size_t arg_max = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double m = std::abs(state.amp(i));
    if (m > best) {
      best = m;
      arg_max = i;
    }
  }
  const Complex pivot = state.amp(arg_max);
  const Complex phase = std::abs(pivot) > 0.0 ? std::conj(pivot) / std::abs(pivot)
                                              : Complex{1.0, 0.0};
  std::vector<Complex> amps(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) amps[i] = state.amp(i) * phase;
  return make_pure_state_unit(CoefficientTensor(state.profile(), std::move(amps)),
                              state.applied_scale());
}

PureState basis_state(const DimensionProfile& profile, std::span<const int> multi) {
  CoefficientTensor t(profile);
  t.set_amp(multi, Complex{1.0, 0.0});
  return make_pure_state(t);
}

PureState product_state(const DimensionProfile& profile,
                        std::span<const std::vector<Complex>> factors) {
  return make_pure_state(product_tensor(profile, factors));
}

PureState maximally_entangled_state(const DimensionProfile& profile) {
  int n = profile.dim(0);
  for (int k = 1; k < profile.mode_count(); ++k) n = std::min(n, profile.dim(k));
  CoefficientTensor t(profile);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<int> multi(static_cast<std::size_t>(profile.mode_count()));
  for (int i = 0; i < n; ++i) {
    std::fill(multi.begin(), multi.end(), i);
    t.set_amp(multi, Complex{amp, 0.0});
  }
  return make_pure_state(t);
}

DensityMatrix::DensityMatrix(DimensionProfile profile, Eigen::MatrixXcd entries)
    : profile_(std::move(profile)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(profile_.total_dim());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw DimensionMismatch("density matrix must be " + std::to_string(n) + "x" +
                            std::to_string(n) + " for profile " + profile_.to_string());
  }
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kHermiticity) {
    throw InvalidDensityMatrix("matrix is not Hermitian: max asymmetry " +
                               std::to_string(herm));
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > tol::kTrace) {
    std::ostringstream msg;
    msg << "trace is " << tr.real() << (tr.imag() < 0 ? " - " : " + ")
        << std::abs(tr.imag()) << "i, expected 1";
    throw InvalidDensityMatrix(msg.str());
  }
}

DensityMatrix mixture(std::span<const std::pair<double, PureState>> parts) {
  if (parts.empty()) throw Error("mixture of zero states");
  const DimensionProfile& profile = parts.front().second.profile();
  const auto n = static_cast<Eigen::Index>(profile.total_dim());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [weight, state] : parts) {
    if (state.profile() != profile) {
      throw DimensionMismatch("mixture of states on different profiles");
    }
    const Eigen::VectorXcd v = state.to_vector();
    rho.noalias() += weight * (v * v.adjoint());
  }
  return DensityMatrix(profile, std::move(rho));
}

RankTwoState::RankTwoState(double p, const PureState& e1, const PureState& e2)
    : p_(p), e1_(canonical_phase(e1)), e2_(canonical_phase(e2)) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error("eigenvalue p = " + std::to_string(p) + " is outside (0, 1)");
  }
  if (e1.profile() != e2.profile()) {
    throw DimensionMismatch("eigenvectors on different profiles");
  }
  const double overlap = std::abs(inner_product(e1_, e2_));
  if (overlap > tol::kOrthogonality) {
    throw NotOrthogonal("|<E1|E2>| = " + std::to_string(overlap));
  }
}

DensityMatrix RankTwoState::to_density_matrix() const {
  const std::pair<double, PureState> parts[] = {{p_, e1_}, {1.0 - p_, e2_}};
  return mixture(parts);
}

RankTwoState rank2_eigendecompose(const DensityMatrix& rho, double rank_tol) {
  const Eigen::MatrixXcd& m = rho.entries();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw InternalError("Hermitian eigendecomposition did not converge");
  }
  const Eigen::VectorXd evals = solver.eigenvalues();  // ascending
  const auto n = evals.size();
  const double lambda_max = evals(n - 1);
  if (lambda_max <= 0.0) {
    throw InvalidDensityMatrix("matrix has no positive eigenvalue");
  }
  if (evals(0) < -tol::kPositivity) {
    throw InvalidDensityMatrix("negative eigenvalue " + std::to_string(evals(0)));
  }

  const double threshold = rank_tol * lambda_max;
  if (n > 2 && std::abs(evals(n - 3)) > threshold) {
    std::ostringstream msg;
    msg << "numerical rank exceeds two; residual spectrum beyond the leading pair:";
    for (Eigen::Index i = n - 3; i >= 0 && i >= n - 8; --i) msg << ' ' << evals(i);
    throw NotRankTwo(msg.str());
  }
  const double p_raw = evals(n - 1);
  const double q_raw = evals(n - 2);
  if (q_raw <= threshold) {
    throw RankOne("second eigenvalue " + std::to_string(q_raw) +
                  " is below the rank tolerance");
  }

  auto column_state = [&](Eigen::Index col) {
    std::vector<Complex> amps(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      amps[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, col);
    }
    return make_pure_state(CoefficientTensor(rho.profile(), std::move(amps)));
  };
  const PureState e1 = column_state(n - 1);
  const PureState e2 = column_state(n - 2);

  for (const PureState* e : {&e1, &e2}) {
    const Eigen::VectorXcd v = e->to_vector();
    const double lambda = (e == &e1) ? p_raw : q_raw;
    const double residual = (m * v - lambda * v).norm();
    if (residual > tol::kEigenResidual) {
      throw InternalError("eigenpair residual " + std::to_string(residual) +
                          " exceeds tolerance");
    }
  }

  // Discarded mass is at most rank_tol per spurious eigenvalue; renormalize
  // so the two retained weights sum to exactly one.
  const double p = p_raw / (p_raw + q_raw);
  return RankTwoState(p, e1, e2);
}

PureState apply_local_unitaries(const PureState& state,
                                std::span<const Eigen::MatrixXcd> unitaries) {
  const DimensionProfile& profile = state.profile();
  const int modes = profile.mode_count();
  if (static_cast<int>(unitaries.size()) != modes) {
    throw DimensionMismatch("expected one unitary per mode");
  }
  for (int k = 0; k < modes; ++k) {
    const Eigen::MatrixXcd& u = unitaries[static_cast<std::size_t>(k)];
    const auto nk = static_cast<Eigen::Index>(profile.dim(k));
    if (u.rows() != nk || u.cols() != nk) {
      throw DimensionMismatch("unitary for mode " + std::to_string(k) +
                              " has wrong shape");
    }
    const double defect =
        (u * u.adjoint() - Eigen::MatrixXcd::Identity(nk, nk)).cwiseAbs().maxCoeff();
    if (defect > tol::kUnitarity) {
      throw NotUnitary("matrix for mode " + std::to_string(k) +
                       " deviates from unitarity by " + std::to_string(defect));
    }
  }

  std::vector<Complex> amps = state.tensor().amps();
  const std::size_t total = profile.total_dim();
  for (int k = 0; k < modes; ++k) {
    const Eigen::MatrixXcd& u = unitaries[static_cast<std::size_t>(k)];
    const std::size_t stride = profile.stride(k);
    const int nk = profile.dim(k);
    std::vector<Complex> fiber(static_cast<std::size_t>(nk));
    for (std::size_t base = 0; base < total; ++base) {
      if (profile.digit(base, k) != 0) continue;
      for (int i = 0; i < nk; ++i) {
        fiber[static_cast<std::size_t>(i)] = amps[base + static_cast<std::size_t>(i) * stride];
      }
      for (int j = 0; j < nk; ++j) {
        Complex s{0.0, 0.0};
        for (int i = 0; i < nk; ++i) {
          s += u(j, i) * fiber[static_cast<std::size_t>(i)];
        }
        amps[base + static_cast<std::size_t>(j) * stride] = s;
      }
    }
  }
  return make_pure_state_unit(CoefficientTensor(profile, std::move(amps)),
                              state.applied_scale());
}

}  // namespace qsep
