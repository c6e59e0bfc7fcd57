#pragma once

#include <vector>

#include "qsep/bipartition.hpp"
#include "qsep/states.hpp"

namespace qsep {

/// The local-unitary invariants of a pure state: the quadratic norm I_0 and
/// one biquadratic invariant per bipartition class,
///   I_TS = sum_{u,v} a[u] a[mix(u,v)]* a[v] a[mix(v,u)]*,
/// which equals tr(rho_T^2) for normalized states.
struct InvariantSet {
  double i0 = 0.0;
  std::vector<std::pair<BipartitionClass, double>> i_ts;
  // Each I_TS is exactly real (the summand pairs are conjugate under the
  // hybrid-index involution); this tracks the numerical leftover.
  double max_imag_residue = 0.0;
};

InvariantSet compute_invariants(const PureState& state);

/// Generalized concurrence
///   C = sqrt(2 (d I_0^2 - sum_TS I_TS)),  d = 2^(M-1) - 1,
/// equal to the square root of the sum of all squared 2x2 pair minors
///   |a[u] a[v] - a[mix(u,v)] a[mix(v,u)]|^2
/// over canonical classes and ordered index pairs. Both routes are evaluated;
/// the minor-sum value is returned. Throws FormulaMismatch when they disagree
/// beyond tol::kFormulaFail.
double generalized_concurrence(const PureState& state);

/// Both concurrence routes, unchecked: {minor-sum value, invariant value}.
std::pair<double, double> concurrence_both_paths(const PureState& state);

/// Default scale-aware separability tolerance for a state.
double pure_separability_tolerance(const PureState& state);

/// C <= tol. A negative tol selects pure_separability_tolerance(state).
bool pure_is_separable(const PureState& state, double tol = -1.0);

/// For a (numerically) fully separable state, per-mode unit vectors whose
/// outer product reproduces the amplitudes. Factors come from the fibers
/// through the largest-magnitude amplitude; the first factor absorbs the
/// phase correction so the rebuilt product matches with no residual phase.
/// Throws NotSeparable when pure_is_separable(state, tol) fails.
std::vector<std::vector<Complex>> extract_product_factors(const PureState& state,
                                                          double tol = -1.0);

}  // namespace qsep
