#pragma once

#include <optional>
#include <string>

#include "qsep/quadratic_family.hpp"
#include "qsep/states.hpp"

namespace qsep {

/// Explicit separable decomposition rho = p' P(E1') + (1-p') P(E2').
/// When the decomposition is the eigenpair itself (both eigenvectors already
/// separable) the roots are absent.
struct Decomposition {
  std::optional<Complex> mu1, mu2;
  double theta = 0.0;
  double p_prime = 0.0;
  PureState e1_prime, e2_prime;
  double reconstruction_residual = 0.0;
};

/// Decision outcome. Entangled verdicts carry the violated condition and,
/// where applicable, the offending family (or pair of families).
struct SeparabilityVerdict {
  enum class Status { Separable, Entangled };
  enum class Witness {
    None,
    PhaseEquationViolated,
    ProportionalityViolated,
    DoubleRoot,
    WeightOutOfRange,
    E2SeparableE1Not,
    ConcurrenceRatioViolated,
  };

  Status status = Status::Entangled;
  Witness witness = Witness::None;
  std::optional<FamilyIndex> witness_family;   // primary offending family
  std::optional<FamilyIndex> witness_family2;  // reference/partner family
  double witness_value = 0.0;                  // residual or out-of-range p'
  std::optional<Decomposition> decomposition;  // set iff Separable

  bool separable() const { return status == Status::Separable; }
  std::string witness_name() const;
};

/// Full sufficient-and-necessary decision for a rank-two state, with p the
/// weight of E1. Pipeline: coefficient triples for every family, common-root
/// analysis, then
///   - all triples zero / only betas alive: both eigenvectors are separable
///     and the eigenpair itself is the decomposition;
///   - alphas zero but some gamma alive: entangled (E2 separable, E1 not);
///   - proportional: the modulus condition |gamma_ref/alpha_ref| = 1/p - 1
///     fixes theta, z = mu2 - mu1 must satisfy z = e^{i theta} z*, the
///     recovered eigenvalue must match p, and the weight
///     p' = mu2 (1+|mu1|^2) / (z - mu1 mu2 z*) must land in (0, 1); both root
///     orderings are tried;
///   - otherwise: entangled with the violated condition as witness.
/// Every Separable verdict is re-verified unconditionally (both decomposition
/// vectors separable, reconstruction residual within tol::kReconstruction);
/// violation throws InternalError rather than returning a false verdict.
SeparabilityVerdict decide(const RankTwoState& rho, double rel_tol = tol::kRel);

/// Real-coefficient criterion. Requires every amplitude of E1 and E2 to be
/// real within 1e-12 after canonical phasing (else NotRealCoefficients).
///   delta1 = sum_f |gamma_f - (1-1/p) alpha_f|^2
///            + sum_{f,g} |beta_f alpha_g - alpha_f beta_g|^2
///   delta2 = sum_f |gamma_f + (1-1/p) alpha_f|^2 + sum_f |beta_f|^2
/// The state is separable iff min(delta1, delta2) <= scale^2 * rel_tol.
struct RealCaseDeltas {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double scale = 0.0;

  bool separable(double rel_tol = tol::kRel) const {
    return std::min(delta1, delta2) <= scale * scale * rel_tol;
  }
};

RealCaseDeltas real_case_deltas(const RankTwoState& rho);

/// Family-wise concurrences of the two eigenvectors:
///   c1 = sqrt(sum_f |gamma_f|^2),  c2 = sqrt(sum_f |alpha_f|^2).
/// Separability requires c1 * p = c2 * (1 - p).
struct ConcurrencePair {
  double c1 = 0.0;
  double c2 = 0.0;
};

ConcurrencePair family_concurrences(const RankTwoState& rho);

/// Necessary-condition screen: an Entangled verdict when the concurrence
/// ratio equation fails beyond tolerance, std::nullopt otherwise. A pass is
/// never a separability certificate.
std::optional<SeparabilityVerdict> concurrence_ratio_screen(
    const RankTwoState& rho, double rel_tol = tol::kRel);

enum class CorollaryResult { Entangled, Inconclusive };

/// Threshold statement for a mixture p P(E1) + (1-p) P(E2) whose E2 is the
/// canonical maximally entangled vector: not separable for 0 < p < 1/2.
/// Validates the premises (NotMaximallyEntangled, NotOrthogonal) and makes
/// no claim for p >= 1/2.
CorollaryResult corollary_threshold(const PureState& e2_maximally_entangled,
                                    const PureState& e1, double p,
                                    double rel_tol = tol::kRel);

}  // namespace qsep
