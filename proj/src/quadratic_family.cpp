#include "qsep/quadratic_family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsep/errors.hpp"

namespace qsep {

std::string FamilyIndex::to_string(const DimensionProfile& profile) const {
  auto fmt = [&](std::size_t linear) {
    std::ostringstream out;
    out << '(';
    const auto multi = profile.multi_index(linear);
    for (std::size_t k = 0; k < multi.size(); ++k) {
      if (k) out << ',';
      out << multi[k];
    }
    out << ')';
    return out.str();
  };
  return "T=" + cls.to_string() + " u=" + fmt(u) + " v=" + fmt(v);
}

std::vector<FamilyIndex> enumerate_families(const DimensionProfile& profile) {
  std::vector<FamilyIndex> families;
  for (const BipartitionClass& cls : BipartitionClass::enumerate(profile.mode_count())) {
    const IndexMixer mixer(profile, cls);
    for (std::size_t u = 0; u < profile.total_dim(); ++u) {
      for (std::size_t v = u + 1; v < profile.total_dim(); ++v) {
        if (mixer.trivial_pair(u, v)) continue;
        families.push_back(FamilyIndex{cls, u, v});
      }
    }
  }
  return families;
}

CoefficientTriple coefficient_triple(const PureState& e1, const PureState& e2,
                                     const FamilyIndex& family) {
  if (e1.profile() != e2.profile()) {
    throw DimensionMismatch("eigenvectors on different profiles");
  }
  const IndexMixer mixer(e1.profile(), family.cls);
  const std::size_t u = family.u, v = family.v;
  const std::size_t mu = mixer.mix(u, v), nu = mixer.mix(v, u);

  const auto& a1 = e1.tensor().amps();
  const auto& a2 = e2.tensor().amps();

  CoefficientTriple t{family, {}, {}, {}};
  t.alpha = a2[u] * a2[v] - a2[mu] * a2[nu];
  t.gamma = a1[u] * a1[v] - a1[mu] * a1[nu];
  t.beta = a2[u] * a1[v] + a1[u] * a2[v] - a2[mu] * a1[nu] - a1[mu] * a2[nu];
  return t;
}

std::vector<CoefficientTriple> coefficient_triples(const PureState& e1,
                                                   const PureState& e2) {
  if (e1.profile() != e2.profile()) {
    throw DimensionMismatch("eigenvectors on different profiles");
  }
  const DimensionProfile& profile = e1.profile();
  const auto& a1 = e1.tensor().amps();
  const auto& a2 = e2.tensor().amps();

  std::vector<CoefficientTriple> triples;
  for (const BipartitionClass& cls : BipartitionClass::enumerate(profile.mode_count())) {
    const IndexMixer mixer(profile, cls);
    for (std::size_t u = 0; u < profile.total_dim(); ++u) {
      for (std::size_t v = u + 1; v < profile.total_dim(); ++v) {
        if (mixer.trivial_pair(u, v)) continue;
        const std::size_t mu = mixer.mix(u, v), nu = mixer.mix(v, u);
        CoefficientTriple t{FamilyIndex{cls, u, v}, {}, {}, {}};
        t.alpha = a2[u] * a2[v] - a2[mu] * a2[nu];
        t.gamma = a1[u] * a1[v] - a1[mu] * a1[nu];
        t.beta = a2[u] * a1[v] + a1[u] * a2[v] - a2[mu] * a1[nu] - a1[mu] * a2[nu];
        triples.push_back(std::move(t));
      }
    }
  }
  return triples;
}

std::pair<Complex, Complex> solve_quadratic(Complex a, Complex b, Complex c) {
  if (a == Complex{0.0, 0.0}) {
    throw Error("solve_quadratic requires a nonzero leading coefficient");
  }
  // q = -(b + s sqrt(b^2 - 4ac))/2 with the sign s chosen to avoid
  // cancellation; then the roots are q/a and c/q.
  const Complex disc = b * b - 4.0 * a * c;
  Complex root = std::sqrt(disc);  // principal branch
  if (std::real(std::conj(b) * root) < 0.0) root = -root;
  const Complex q = -0.5 * (b + root);

  Complex r1, r2;
  if (q == Complex{0.0, 0.0}) {
    // Only possible when b = 0 and c = 0: a double root at the origin.
    r1 = r2 = Complex{0.0, 0.0};
  } else {
    r1 = q / a;
    r2 = c / q;
  }
  auto less = [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  };
  if (less(r2, r1)) std::swap(r1, r2);
  return {r1, r2};
}

RootAnalysis analyze_common_roots(std::span<const CoefficientTriple> triples,
                                  double rel_tol) {
  RootAnalysis out;

  double scale = 0.0;
  double max_alpha = 0.0;
  std::size_t ref = RootAnalysis::npos;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    scale = std::max({scale, std::abs(t.alpha), std::abs(t.beta), std::abs(t.gamma)});
    if (std::abs(t.alpha) > max_alpha) {
      max_alpha = std::abs(t.alpha);
      ref = i;
    }
  }
  out.scale = scale;

  // States are unit-norm, so coefficient magnitudes live on an O(1) scale;
  // everything below the floor is rounding noise.
  if (scale <= tol::kCoefficientFloor) {
    out.kind = RootAnalysis::Kind::AllZero;
    return out;
  }

  const double coeff_tol = scale * rel_tol;
  if (max_alpha <= coeff_tol) {
    out.kind = RootAnalysis::Kind::E1OnlyConstraints;
    for (std::size_t i = 0; i < triples.size(); ++i) {
      if (std::abs(triples[i].gamma) > coeff_tol) {
        out.gamma_all_zero = false;
        if (out.witness == RootAnalysis::npos ||
            std::abs(triples[i].gamma) > std::abs(triples[out.witness].gamma)) {
          out.witness = i;
        }
      }
      if (std::abs(triples[i].beta) > coeff_tol) out.beta_all_zero = false;
    }
    return out;
  }

  out.reference = ref;
  const CoefficientTriple& r = triples[ref];
  const double cross_tol = scale * scale * rel_tol;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    const double res_beta = std::abs(t.beta * r.alpha - r.beta * t.alpha);
    const double res_gamma = std::abs(t.gamma * r.alpha - r.gamma * t.alpha);
    const double res = std::max(res_beta, res_gamma);
    if (res > out.max_residual) {
      out.max_residual = res;
      out.witness = i;
    }
  }
  if (out.max_residual > cross_tol) {
    out.kind = RootAnalysis::Kind::Inconsistent;
    out.defect = RootAnalysis::Defect::Proportionality;
    return out;
  }

  const auto [mu1, mu2] = solve_quadratic(r.alpha, r.beta, r.gamma);
  out.mu1 = mu1;
  out.mu2 = mu2;
  const double root_scale = std::max({1.0, std::abs(mu1), std::abs(mu2)});
  if (std::abs(mu1 - mu2) <= rel_tol * root_scale) {
    out.kind = RootAnalysis::Kind::Inconsistent;
    out.defect = RootAnalysis::Defect::DoubleRoot;
    out.witness = ref;
    return out;
  }

  out.kind = RootAnalysis::Kind::Proportional;
  out.witness = RootAnalysis::npos;
  return out;
}

}  // namespace qsep
