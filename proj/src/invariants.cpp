#include "qsep/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsep/errors.hpp"

namespace qsep {

InvariantSet compute_invariants(const PureState& state) {
  const DimensionProfile& profile = state.profile();
  const std::size_t total = profile.total_dim();
  const auto& a = state.tensor().amps();

  InvariantSet out;
  out.i0 = state.tensor().squared_norm();

  for (const BipartitionClass& cls : BipartitionClass::enumerate(profile.mode_count())) {
    const IndexMixer mixer(profile, cls);
    // I_TS = sum_{u,v} a[u] a[mix(u,v)]* a[v] a[mix(v,u)]*.
    Complex sum{0.0, 0.0};
    for (std::size_t u = 0; u < total; ++u) {
      if (a[u] == Complex{0.0, 0.0}) continue;
      for (std::size_t v = 0; v < total; ++v) {
        if (a[v] == Complex{0.0, 0.0}) continue;
        sum += a[u] * std::conj(a[mixer.mix(u, v)]) * a[v] * std::conj(a[mixer.mix(v, u)]);
      }
    }
    out.i_ts.emplace_back(cls, sum.real());
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(sum.imag()));
  }
  return out;
}

namespace {

// {sum of squared pair minors, 2 (d I0^2 - sum I_TS)}. These are the raw
// sums of the two routes; comparing them before the square root keeps the
// consistency check meaningful for near-separable states, where C itself
// sits on a sqrt-amplified noise floor.
std::pair<double, double> concurrence_squared_paths(const PureState& state) {
  const DimensionProfile& profile = state.profile();
  const std::size_t total = profile.total_dim();
  const auto& a = state.tensor().amps();
  const auto classes = BipartitionClass::enumerate(profile.mode_count());

  double minor_sum = 0.0;
  for (const BipartitionClass& cls : classes) {
    const IndexMixer mixer(profile, cls);
    for (std::size_t u = 0; u < total; ++u) {
      for (std::size_t v = 0; v < total; ++v) {
        if (mixer.trivial_pair(u, v)) continue;
        const Complex minor = a[u] * a[v] - a[mixer.mix(u, v)] * a[mixer.mix(v, u)];
        minor_sum += std::norm(minor);
      }
    }
  }

  const InvariantSet inv = compute_invariants(state);
  double ts_sum = 0.0;
  for (const auto& [cls, value] : inv.i_ts) ts_sum += value;
  const double d = static_cast<double>(inv.i_ts.size());
  const double invariant_sq = 2.0 * (d * inv.i0 * inv.i0 - ts_sum);

  return {minor_sum, invariant_sq};
}

}  // namespace

std::pair<double, double> concurrence_both_paths(const PureState& state) {
  const auto [minor_sum, invariant_sq] = concurrence_squared_paths(state);
  return {std::sqrt(std::max(0.0, minor_sum)),
          std::sqrt(std::max(0.0, invariant_sq))};
}

double generalized_concurrence(const PureState& state) {
  const auto [minor_sum, invariant_sq] = concurrence_squared_paths(state);
  const double gap = std::abs(minor_sum - invariant_sq);
  if (gap > tol::kFormulaFail * std::max(1.0, minor_sum)) {
    std::ostringstream msg;
    msg << "concurrence paths disagree: squared minor sum is " << minor_sum
        << ", invariant route gives " << invariant_sq;
    throw FormulaMismatch(msg.str());
  }
  return std::sqrt(std::max(0.0, minor_sum));
}

double pure_separability_tolerance(const PureState& state) {
  const double max_abs2 = state.tensor().max_abs() * state.tensor().max_abs();
  const double scale = max_abs2 * static_cast<double>(state.dim());
  return tol::kPureSeparable * std::max(1.0, scale);
}

bool pure_is_separable(const PureState& state, double tol) {
  if (tol < 0.0) tol = pure_separability_tolerance(state);
  return generalized_concurrence(state) <= tol;
}

std::vector<std::vector<Complex>> extract_product_factors(const PureState& state,
                                                          double tol) {
  if (!pure_is_separable(state, tol)) {
    throw NotSeparable("state has nonzero generalized concurrence");
  }
  const DimensionProfile& profile = state.profile();

  // Anchor at the largest-magnitude amplitude so every fiber through it is
  // safely nonzero.
  std::size_t anchor = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double m = std::abs(state.amp(i));
    if (m > best) {
      best = m;
      anchor = i;
    }
  }

  const int modes = profile.mode_count();
  std::vector<std::vector<Complex>> factors(static_cast<std::size_t>(modes));
  for (int k = 0; k < modes; ++k) {
    const std::size_t base =
        anchor - static_cast<std::size_t>(profile.digit(anchor, k)) * profile.stride(k);
    auto& f = factors[static_cast<std::size_t>(k)];
    f.resize(static_cast<std::size_t>(profile.dim(k)));
    double n2 = 0.0;
    for (int i = 0; i < profile.dim(k); ++i) {
      f[static_cast<std::size_t>(i)] =
          state.amp(base + static_cast<std::size_t>(i) * profile.stride(k));
      n2 += std::norm(f[static_cast<std::size_t>(i)]);
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (Complex& c : f) c *= scale;
  }

  // Normalizing each fiber leaves one residual global phase; fold it into
  // the first factor so the outer product reproduces the amplitudes as-is.
  Complex rebuilt_anchor{1.0, 0.0};
  for (int k = 0; k < modes; ++k) {
    rebuilt_anchor *=
        factors[static_cast<std::size_t>(k)][static_cast<std::size_t>(profile.digit(anchor, k))];
  }
  const Complex correction = state.amp(anchor) / rebuilt_anchor;
  for (Complex& c : factors[0]) c *= correction;

  return factors;
}

}  // namespace qsep
