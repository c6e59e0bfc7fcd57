#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "qsep/errors.hpp"
#include "qsep/quadratic_family.hpp"
#include "qsep/random.hpp"
#include "qsep/states.hpp"
#include "test_support.hpp"

using namespace qsep;
using doctest::Approx;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState make_state(const DimensionProfile& profile,
                     std::initializer_list<std::pair<std::size_t, Complex>> amps) {
  CoefficientTensor t(profile);
  for (const auto& [linear, value] : amps) t.set_amp(linear, value);
  return make_pure_state(t);
}

// Independent brute-force family enumeration: every nonempty proper subset,
// every ordered index pair, deduplicated through its own canonical key.
std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> brute_force_families(
    const DimensionProfile& profile) {
  const int modes = profile.mode_count();
  const std::uint32_t full = (1u << modes) - 1u;
  std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> out;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    for (std::size_t u = 0; u < profile.total_dim(); ++u) {
      for (std::size_t v = 0; v < profile.total_dim(); ++v) {
        if (u == v) continue;
        bool differ_t = false, differ_s = false;
        for (int k = 0; k < modes; ++k) {
          const bool in_t = (mask >> k) & 1u;
          if (profile.digit(u, k) != profile.digit(v, k)) {
            (in_t ? differ_t : differ_s) = true;
          }
        }
        if (!differ_t || !differ_s) continue;
        const std::uint32_t canonical = (mask & 1u) ? mask : (~mask & full);
        out.emplace(canonical, std::min(u, v), std::max(u, v));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bipartition class counts follow 2^(M-1)-1") {
  CHECK(BipartitionClass::enumerate(2).size() == 1);
  CHECK(BipartitionClass::enumerate(3).size() == 3);
  CHECK(BipartitionClass::enumerate(4).size() == 7);
  CHECK(BipartitionClass::enumerate(5).size() == 15);
}

TEST_CASE("two-qubit profile has exactly two families") {
  DimensionProfile profile({2, 2});
  const auto families = enumerate_families(profile);
  REQUIRE(families.size() == 2);
  CHECK(families[0].cls.mask() == 1);
  CHECK(families[0].u == 0);  // (0,0)
  CHECK(families[0].v == 3);  // (1,1)
  CHECK(families[1].u == 1);  // (0,1)
  CHECK(families[1].v == 2);  // (1,0)
}

TEST_CASE("enumeration matches the brute-force oracle") {
  for (const auto& dims : {std::vector<int>{2, 2}, {2, 3}, {3, 3}, {2, 2, 2},
                           {2, 2, 3}, {2, 3, 4}, {2, 2, 2, 2}}) {
    DimensionProfile profile(dims);
    const auto expected = brute_force_families(profile);
    const auto families = enumerate_families(profile);
    REQUIRE(families.size() == expected.size());
    std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> got;
    for (const auto& f : families) got.emplace(f.cls.mask(), f.u, f.v);
    CHECK(got == expected);
  }
}

TEST_CASE("enumeration order is documented and deterministic") {
  DimensionProfile profile({2, 2, 2});
  const auto families = enumerate_families(profile);
  for (std::size_t i = 1; i < families.size(); ++i) {
    const auto key = [](const FamilyIndex& f) {
      return std::make_tuple(f.cls.mask(), f.u, f.v);
    };
    CHECK(key(families[i - 1]) < key(families[i]));
  }
}

TEST_CASE("coefficient triples of the worked eigenpair") {
  DimensionProfile profile({2, 2, 2});
  const PureState e1 = make_state(profile, {{0, {kInvSqrt2, 0}}, {3, {kInvSqrt2, 0}}});
  const PureState e2 = make_state(profile, {{0, {kInvSqrt2, 0}}, {3, {-kInvSqrt2, 0}}});

  const FamilyIndex family{BipartitionClass(0b011, 3), 0, 3};
  const CoefficientTriple t = coefficient_triple(e1, e2, family);
  CHECK(t.alpha.real() == Approx(-0.5).epsilon(1e-12));
  CHECK(std::abs(t.beta) <= 1e-12);
  CHECK(t.gamma.real() == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("triple with only one populated eigenvector") {
  DimensionProfile profile({2, 2, 2});
  const int i001[] = {0, 0, 1};
  const PureState e1 = basis_state(profile, i001);
  const PureState e2 = make_state(profile, {{0, {1, 0}}, {7, {1, 0}}});  // GHZ

  const FamilyIndex family{BipartitionClass(0b011, 3), 0, 7};
  const CoefficientTriple t = coefficient_triple(e1, e2, family);
  CHECK(t.alpha.real() == Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(t.gamma) <= 1e-12);
}

TEST_CASE("a product E2 zeroes every alpha") {
  DimensionProfile profile({2, 3, 2});
  const PureState e1 = random_pure_state(profile, 5);
  const PureState e2 = random_product_state(profile, 6);
  for (const auto& t : coefficient_triples(e1, e2)) {
    CHECK(std::abs(t.alpha) <= 1e-14);
  }
}

TEST_CASE("common-root analysis classifies the canonical cases") {
  DimensionProfile profile({2, 2, 2});
  const double r = 1e-8;

  SUBCASE("proportional triples with roots +1 and -1") {
    const PureState e1 = make_state(profile, {{0, {kInvSqrt2, 0}}, {3, {kInvSqrt2, 0}}});
    const PureState e2 = make_state(profile, {{0, {kInvSqrt2, 0}}, {3, {-kInvSqrt2, 0}}});
    const auto triples = coefficient_triples(e1, e2);
    const RootAnalysis a = analyze_common_roots(triples, r);
    REQUIRE(a.kind == RootAnalysis::Kind::Proportional);
    CHECK(a.mu1.real() == Approx(-1.0).epsilon(1e-12));
    CHECK(a.mu2.real() == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(a.mu1.imag()) <= 1e-12);
    CHECK(std::abs(triples[a.reference].alpha) == Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("two products differing in one mode leave nothing behind") {
    const int a1[] = {0, 0, 0};
    const int a2[] = {1, 0, 0};
    const auto triples =
        coefficient_triples(basis_state(profile, a1), basis_state(profile, a2));
    CHECK(analyze_common_roots(triples, r).kind == RootAnalysis::Kind::AllZero);
  }

  SUBCASE("two products with live cross terms keep only betas") {
    const int a1[] = {0, 0, 0};
    const int a2[] = {0, 1, 1};
    const auto triples =
        coefficient_triples(basis_state(profile, a1), basis_state(profile, a2));
    const RootAnalysis a = analyze_common_roots(triples, r);
    REQUIRE(a.kind == RootAnalysis::Kind::E1OnlyConstraints);
    CHECK(a.gamma_all_zero);
    CHECK_FALSE(a.beta_all_zero);
  }

  SUBCASE("|001> against GHZ violates beta proportionality") {
    const int i001[] = {0, 0, 1};
    const PureState e1 = basis_state(profile, i001);
    const PureState e2 = make_state(profile, {{0, {1, 0}}, {7, {1, 0}}});
    const RootAnalysis a = analyze_common_roots(coefficient_triples(e1, e2), r);
    REQUIRE(a.kind == RootAnalysis::Kind::Inconsistent);
    CHECK(a.defect == RootAnalysis::Defect::Proportionality);
    CHECK(a.witness != RootAnalysis::npos);
  }

  SUBCASE("a double root is reported as inconsistent") {
    // E1 = |000>, E2 = (|100> - |010>)/sqrt(2): all betas and gammas vanish
    // identically (each E2 support index differs from 000 in one mode), so
    // the reference equation is alpha lambda^2 = 0.
    const int a1[] = {0, 0, 0};
    const PureState e1 = basis_state(profile, a1);
    const PureState e2 = make_state(profile, {{4, {kInvSqrt2, 0}}, {2, {-kInvSqrt2, 0}}});
    const RootAnalysis a = analyze_common_roots(coefficient_triples(e1, e2), r);
    REQUIRE(a.kind == RootAnalysis::Kind::Inconsistent);
    CHECK(a.defect == RootAnalysis::Defect::DoubleRoot);
  }
}

TEST_CASE("analysis does not depend on the family order") {
  DimensionProfile profile({2, 2, 3});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [e1, e2] = testing::random_orthonormal_pair(profile, seed);
    auto triples = coefficient_triples(e1, e2);
    const RootAnalysis before = analyze_common_roots(triples, 1e-8);

    std::mt19937_64 rng(seed);
    std::shuffle(triples.begin(), triples.end(), rng);
    const RootAnalysis after = analyze_common_roots(triples, 1e-8);

    CHECK(before.kind == after.kind);
    if (before.kind == RootAnalysis::Kind::Proportional) {
      CHECK(std::abs(before.mu1 - after.mu1) <= 1e-9);
      CHECK(std::abs(before.mu2 - after.mu2) <= 1e-9);
    }
  }
}

TEST_CASE("quadratic solver is stable under cancellation") {
  SUBCASE("tiny root next to a huge one") {
    const auto [r1, r2] = solve_quadratic({1.0, 0.0}, {-(1e8 + 1e-8), 0.0}, {1.0, 0.0});
    CHECK(r1.real() == Approx(1e-8).epsilon(1e-12));
    CHECK(r2.real() == Approx(1e8).epsilon(1e-12));
  }

  SUBCASE("complex coefficients") {
    // (x - (1+2i))(x - (3-i)) = x^2 - (4+i)x + (5+5i)
    const auto [r1, r2] = solve_quadratic({1.0, 0.0}, {-4.0, -1.0}, {5.0, 5.0});
    CHECK(std::abs(r1 - Complex{1.0, 2.0}) <= 1e-12);
    CHECK(std::abs(r2 - Complex{3.0, -1.0}) <= 1e-12);
  }

  SUBCASE("zero leading coefficient is rejected") {
    CHECK_THROWS_AS(solve_quadratic({0, 0}, {1, 0}, {1, 0}), Error);
  }
}

TEST_CASE("phasing E2 transforms the triples covariantly") {
  DimensionProfile profile({2, 2, 2});
  const auto [e1, e2] = testing::random_orthonormal_pair(profile, 31);
  const double phi = 0.7;
  const Complex phase = std::polar(1.0, phi);
  std::vector<Complex> amps(e2.dim());
  for (std::size_t i = 0; i < e2.dim(); ++i) amps[i] = e2.amp(i) * phase;
  const PureState e2_phased = make_pure_state(CoefficientTensor(profile, std::move(amps)));

  const auto base = coefficient_triples(e1, e2);
  const auto rotated = coefficient_triples(e1, e2_phased);
  REQUIRE(base.size() == rotated.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(std::abs(rotated[i].alpha - phase * phase * base[i].alpha) <= 1e-12);
    CHECK(std::abs(rotated[i].beta - phase * base[i].beta) <= 1e-12);
    CHECK(std::abs(rotated[i].gamma - base[i].gamma) <= 1e-12);
  }

  const RootAnalysis a = analyze_common_roots(base, 1e-8);
  const RootAnalysis b = analyze_common_roots(rotated, 1e-8);
  CHECK(a.kind == b.kind);
  if (a.kind == RootAnalysis::Kind::Proportional) {
    // Roots pick up the inverse phase; compare as sets.
    const Complex inv = std::conj(phase);
    const double direct = std::min(std::abs(b.mu1 - inv * a.mu1) + std::abs(b.mu2 - inv * a.mu2),
                                   std::abs(b.mu1 - inv * a.mu2) + std::abs(b.mu2 - inv * a.mu1));
    CHECK(direct <= 1e-9);
  }
}
