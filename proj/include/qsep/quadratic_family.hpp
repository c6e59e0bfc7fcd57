#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qsep/bipartition.hpp"
#include "qsep/states.hpp"

namespace qsep {

/// One quadratic-equation family: a bipartition class plus an unordered pair
/// of multi-indices (stored with u < v in linear order) that differ on both
/// sides of the cut. Pairs agreeing on T or on S are trivial and never
/// enumerated.
struct FamilyIndex {
  BipartitionClass cls;
  std::size_t u = 0, v = 0;  // linear indices, u < v

  std::string to_string(const DimensionProfile& profile) const;
};

/// Every canonical nontrivial family, exactly once, ordered by bipartition
/// class (increasing mask) and then lexicographically by (u, v).
std::vector<FamilyIndex> enumerate_families(const DimensionProfile& profile);

/// Coefficients of  alpha lambda^2 + beta lambda + gamma = 0,  the condition
/// for E1 + lambda E2 to have a vanishing minor on this family:
///   alpha = a2[u] a2[v] - a2[mu] a2[nu]     (minor of E2)
///   gamma = a1[u] a1[v] - a1[mu] a1[nu]     (minor of E1)
///   beta  = a2[u] a1[v] + a1[u] a2[v] - a2[mu] a1[nu] - a1[mu] a2[nu]
/// with mu = mix(u, v), nu = mix(v, u).
struct CoefficientTriple {
  FamilyIndex family;
  Complex alpha, beta, gamma;
};

CoefficientTriple coefficient_triple(const PureState& e1, const PureState& e2,
                                     const FamilyIndex& family);

/// Triples for every enumerated family, in enumeration order.
std::vector<CoefficientTriple> coefficient_triples(const PureState& e1,
                                                   const PureState& e2);

/// Outcome of the common-root scan over all families.
struct RootAnalysis {
  enum class Kind {
    AllZero,            // every alpha, beta, gamma below the noise floor
    E1OnlyConstraints,  // all alpha vanish; beta/gamma structure remains
    Proportional,       // all triples proportional to the reference
    Inconsistent,       // proportionality fails or the roots coincide
  };
  enum class Defect { None, Proportionality, DoubleRoot };

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Kind kind = Kind::AllZero;
  Defect defect = Defect::None;
  std::size_t reference = npos;  // index into the triple list (max |alpha|)
  std::size_t witness = npos;    // family with the largest residual, if any
  Complex mu1, mu2;              // roots, sorted by (re, im); Proportional only
  bool gamma_all_zero = true;    // meaningful for E1OnlyConstraints
  bool beta_all_zero = true;
  double scale = 0.0;            // max over families of max(|a|,|b|,|g|)
  double max_residual = 0.0;     // largest cross-product residual seen
};

/// Selects the reference family with maximal |alpha| and checks
///   beta_f alpha_ref = beta_ref alpha_f,  gamma_f alpha_ref = gamma_ref alpha_f
/// for every family against scale^2 * rel_tol. On success solves the
/// reference quadratic; roots equal within rel_tol degrade to
/// Inconsistent/DoubleRoot.
RootAnalysis analyze_common_roots(std::span<const CoefficientTriple> triples,
                                  double rel_tol);

/// Numerically stable roots of a x^2 + b x + c with complex coefficients,
/// a != 0, sorted by (re, im).
std::pair<Complex, Complex> solve_quadratic(Complex a, Complex b, Complex c);

}  // namespace qsep
