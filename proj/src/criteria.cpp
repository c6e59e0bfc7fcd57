#include "qsep/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsep/errors.hpp"
#include "qsep/invariants.hpp"

namespace qsep {

namespace {

constexpr double kSoundnessFactor = 100.0;  // slack for the unconditional re-check

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.entries() - b.entries()).norm();
}

// Unconditional soundness check: a Separable verdict must survive
// reconstruction and pure-state re-testing, otherwise it is a bug.
void verify_separable(const Decomposition& dec, double rel_tol) {
  const double sep_tol1 = std::max(pure_separability_tolerance(dec.e1_prime),
                                   kSoundnessFactor * rel_tol);
  const double sep_tol2 = std::max(pure_separability_tolerance(dec.e2_prime),
                                   kSoundnessFactor * rel_tol);
  if (!pure_is_separable(dec.e1_prime, sep_tol1) ||
      !pure_is_separable(dec.e2_prime, sep_tol2)) {
    throw InternalError("claimed decomposition contains an entangled vector");
  }
  if (dec.reconstruction_residual > tol::kReconstruction) {
    throw InternalError("decomposition does not reconstruct the input: residual " +
                        std::to_string(dec.reconstruction_residual));
  }
}

SeparabilityVerdict separable_with_eigenpair(const RankTwoState& rho, double rel_tol) {
  Decomposition dec{.mu1 = std::nullopt,
                    .mu2 = std::nullopt,
                    .theta = 0.0,
                    .p_prime = rho.p(),
                    .e1_prime = rho.e1(),
                    .e2_prime = rho.e2(),
                    .reconstruction_residual = 0.0};
  verify_separable(dec, rel_tol);
  SeparabilityVerdict verdict;
  verdict.status = SeparabilityVerdict::Status::Separable;
  verdict.decomposition = std::move(dec);
  return verdict;
}

SeparabilityVerdict entangled(SeparabilityVerdict::Witness witness,
                              std::optional<FamilyIndex> family = std::nullopt,
                              std::optional<FamilyIndex> family2 = std::nullopt,
                              double value = 0.0) {
  SeparabilityVerdict verdict;
  verdict.status = SeparabilityVerdict::Status::Entangled;
  verdict.witness = witness;
  verdict.witness_family = std::move(family);
  verdict.witness_family2 = std::move(family2);
  verdict.witness_value = value;
  return verdict;
}

}  // namespace

std::string SeparabilityVerdict::witness_name() const {
  switch (witness) {
    case Witness::None:
      return "none";
    case Witness::PhaseEquationViolated:
      return "phase-equation-violated";
    case Witness::ProportionalityViolated:
      return "proportionality-violated";
    case Witness::DoubleRoot:
      return "double-root";
    case Witness::WeightOutOfRange:
      return "weight-out-of-range";
    case Witness::E2SeparableE1Not:
      return "e2-separable-e1-not";
    case Witness::ConcurrenceRatioViolated:
      return "concurrence-ratio-violated";
  }
  return "unknown";
}

SeparabilityVerdict decide(const RankTwoState& rho, double rel_tol) {
  const PureState& e1 = rho.e1();
  const PureState& e2 = rho.e2();
  const double p = rho.p();

  const std::vector<CoefficientTriple> triples = coefficient_triples(e1, e2);
  const RootAnalysis analysis = analyze_common_roots(triples, rel_tol);

  switch (analysis.kind) {
    case RootAnalysis::Kind::AllZero:
      // Every minor of both eigenvectors vanishes: the eigenpair itself is a
      // product-state decomposition.
      return separable_with_eigenpair(rho, rel_tol);

    case RootAnalysis::Kind::E1OnlyConstraints:
      if (analysis.gamma_all_zero) {
        // All alpha and gamma vanish: both eigenvectors are separable, the
        // surviving betas only say that no further mixing direction exists.
        return separable_with_eigenpair(rho, rel_tol);
      }
      return entangled(SeparabilityVerdict::Witness::E2SeparableE1Not,
                       triples[analysis.witness].family, std::nullopt,
                       std::abs(triples[analysis.witness].gamma));

    case RootAnalysis::Kind::Inconsistent:
      if (analysis.defect == RootAnalysis::Defect::DoubleRoot) {
        return entangled(SeparabilityVerdict::Witness::DoubleRoot,
                         triples[analysis.reference].family, std::nullopt,
                         std::abs(analysis.mu1 - analysis.mu2));
      }
      return entangled(SeparabilityVerdict::Witness::ProportionalityViolated,
                       triples[analysis.witness].family,
                       triples[analysis.reference].family, analysis.max_residual);

    case RootAnalysis::Kind::Proportional:
      break;
  }

  const CoefficientTriple& ref = triples[analysis.reference];
  const FamilyIndex& ref_family = ref.family;

  // Phase equation gamma_ref = e^{i theta} (1 - 1/p) alpha_ref: the modulus
  // fixes |ratio| = 1/p - 1 and the argument fixes theta.
  const Complex ratio = ref.gamma / ref.alpha;
  const double target = 1.0 / p - 1.0;
  const double modulus_residual = std::abs(std::abs(ratio) - target);
  if (modulus_residual > rel_tol * std::max(1.0, target)) {
    return entangled(SeparabilityVerdict::Witness::PhaseEquationViolated, ref_family,
                     std::nullopt, modulus_residual);
  }
  const double theta = std::arg(-ratio);
  const Complex phase{std::cos(theta), std::sin(theta)};

  // z = mu2 - mu1 must satisfy z = e^{i theta} z*. The residual does not
  // depend on the root labeling (z flips sign).
  const Complex z0 = analysis.mu2 - analysis.mu1;
  const double z_residual = std::abs(z0 - phase * std::conj(z0));
  if (z_residual > rel_tol * std::max(1.0, std::abs(z0))) {
    return entangled(SeparabilityVerdict::Witness::PhaseEquationViolated, ref_family,
                     std::nullopt, z_residual);
  }

  // Recovered eigenvalue p = (1 - mu1 mu2 z*/z)^{-1}; also labeling-free.
  const Complex mu_prod = analysis.mu1 * analysis.mu2;
  const Complex p_recovered = 1.0 / (1.0 - mu_prod * std::conj(z0) / z0);
  if (std::abs(p_recovered - Complex{p, 0.0}) > tol::kPConsistency) {
    return entangled(SeparabilityVerdict::Witness::PhaseEquationViolated, ref_family,
                     std::nullopt, std::abs(p_recovered - Complex{p, 0.0}));
  }

  // Weight p' = mu2 (1 + |mu1|^2) / (z - mu1 mu2 z*), for both labelings of
  // the roots; a valid labeling lands strictly inside (0, 1). The endpoints
  // would make the state rank one, which the input is not.
  double nearest_p_prime = -1.0;
  double nearest_distance = std::numeric_limits<double>::infinity();
  for (int ordering = 0; ordering < 2; ++ordering) {
    const Complex mu1 = ordering == 0 ? analysis.mu1 : analysis.mu2;
    const Complex mu2 = ordering == 0 ? analysis.mu2 : analysis.mu1;
    const Complex z = mu2 - mu1;
    const Complex denom = z - mu1 * mu2 * std::conj(z);
    if (std::abs(denom) < tol::kCoefficientFloor) continue;
    const Complex p_prime_c = mu2 * (1.0 + std::norm(mu1)) / denom;
    const double off_interval =
        std::max({0.0, -p_prime_c.real(), p_prime_c.real() - 1.0}) +
        std::abs(p_prime_c.imag());
    if (off_interval < nearest_distance) {
      nearest_distance = off_interval;
      nearest_p_prime = p_prime_c.real();
    }
    if (std::abs(p_prime_c.imag()) > rel_tol * std::max(1.0, std::abs(p_prime_c))) {
      continue;
    }
    const double p_prime = p_prime_c.real();
    if (p_prime < rel_tol || p_prime > 1.0 - rel_tol) continue;

    PureState e1p = canonical_phase(combine(e1, mu1, e2));
    PureState e2p = canonical_phase(combine(e1, mu2, e2));
    const std::pair<double, PureState> parts[] = {{p_prime, e1p},
                                                  {1.0 - p_prime, e2p}};
    const double residual =
        frobenius_distance(mixture(parts), rho.to_density_matrix());

    Decomposition dec{.mu1 = mu1,
                      .mu2 = mu2,
                      .theta = theta,
                      .p_prime = p_prime,
                      .e1_prime = std::move(e1p),
                      .e2_prime = std::move(e2p),
                      .reconstruction_residual = residual};
    verify_separable(dec, rel_tol);

    SeparabilityVerdict verdict;
    verdict.status = SeparabilityVerdict::Status::Separable;
    verdict.decomposition = std::move(dec);
    return verdict;
  }
  return entangled(SeparabilityVerdict::Witness::WeightOutOfRange, ref_family,
                   std::nullopt, nearest_p_prime);
}

RealCaseDeltas real_case_deltas(const RankTwoState& rho) {
  const PureState e1 = canonical_phase(rho.e1());
  const PureState e2 = canonical_phase(rho.e2());
  for (const PureState* e : {&e1, &e2}) {
    for (std::size_t i = 0; i < e->dim(); ++i) {
      if (std::abs(e->amp(i).imag()) > 1e-12) {
        throw NotRealCoefficients("amplitude " + std::to_string(i) +
                                  " has imaginary part " +
                                  std::to_string(e->amp(i).imag()));
      }
    }
  }

  const std::vector<CoefficientTriple> triples = coefficient_triples(e1, e2);
  const double factor = 1.0 - 1.0 / rho.p();

  RealCaseDeltas deltas;
  for (const auto& t : triples) {
    deltas.scale = std::max(
        {deltas.scale, std::abs(t.alpha), std::abs(t.beta), std::abs(t.gamma)});
    deltas.delta1 += std::norm(t.gamma - factor * t.alpha);
    deltas.delta2 += std::norm(t.gamma + factor * t.alpha);
    deltas.delta2 += std::norm(t.beta);
  }
  for (const auto& f : triples) {
    for (const auto& g : triples) {
      deltas.delta1 += std::norm(f.beta * g.alpha - f.alpha * g.beta);
    }
  }
  return deltas;
}

ConcurrencePair family_concurrences(const RankTwoState& rho) {
  const std::vector<CoefficientTriple> triples =
      coefficient_triples(rho.e1(), rho.e2());
  double g2 = 0.0, a2 = 0.0;
  for (const auto& t : triples) {
    g2 += std::norm(t.gamma);
    a2 += std::norm(t.alpha);
  }
  return {std::sqrt(g2), std::sqrt(a2)};
}

std::optional<SeparabilityVerdict> concurrence_ratio_screen(const RankTwoState& rho,
                                                            double rel_tol) {
  const auto [c1, c2] = family_concurrences(rho);
  const double p = rho.p();
  const double residual = std::abs(c1 * p - c2 * (1.0 - p));
  const double scale = std::max(c1, c2);
  if (residual > scale * rel_tol * std::max(p, 1.0 - p)) {
    auto verdict = entangled(SeparabilityVerdict::Witness::ConcurrenceRatioViolated,
                             std::nullopt, std::nullopt, residual);
    return verdict;
  }
  return std::nullopt;
}

CorollaryResult corollary_threshold(const PureState& e2_maximally_entangled,
                                    const PureState& e1, double p, double rel_tol) {
  const PureState& e2 = e2_maximally_entangled;
  if (e1.profile() != e2.profile()) {
    throw DimensionMismatch("states on different profiles");
  }
  const DimensionProfile& profile = e2.profile();

  // The canonical maximally entangled vector: one common amplitude of
  // modulus 1/sqrt(N) on the diagonal multi-indices, zero elsewhere.
  int n = profile.dim(0);
  for (int k = 1; k < profile.mode_count(); ++k) n = std::min(n, profile.dim(k));
  const double expected = 1.0 / std::sqrt(static_cast<double>(n));
  Complex diag_value{0.0, 0.0};
  bool have_diag = false;
  double worst = 0.0;
  for (std::size_t linear = 0; linear < profile.total_dim(); ++linear) {
    bool diagonal = true;
    const int first = profile.digit(linear, 0);
    for (int k = 0; k < profile.mode_count(); ++k) {
      if (profile.digit(linear, k) != first) {
        diagonal = false;
        break;
      }
    }
    diagonal = diagonal && first < n;
    const Complex a = e2.amp(linear);
    if (diagonal) {
      if (!have_diag) {
        diag_value = a;
        have_diag = true;
      }
      worst = std::max(worst, std::abs(a - diag_value));
      worst = std::max(worst, std::abs(std::abs(a) - expected));
    } else {
      worst = std::max(worst, std::abs(a));
    }
  }
  if (worst > rel_tol * std::max(1.0, expected)) {
    throw NotMaximallyEntangled(
        "E2 deviates from the canonical maximally entangled vector by " +
        std::to_string(worst));
  }

  const double overlap = std::abs(inner_product(e1, e2));
  if (overlap > tol::kOrthogonality) {
    throw NotOrthogonal("|<E1|E2>| = " + std::to_string(overlap));
  }

  if (p > 0.0 && p < 0.5 - rel_tol) return CorollaryResult::Entangled;
  return CorollaryResult::Inconclusive;
}

}  // namespace qsep
