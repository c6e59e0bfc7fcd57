#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>

#include "qsep/criteria.hpp"
#include "qsep/errors.hpp"
#include "qsep/invariants.hpp"
#include "qsep/oracle.hpp"
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

}  // namespace

TEST_CASE("mode unfoldings detect where the entanglement lives") {
  DimensionProfile profile({2, 2, 2});
  const PureState ghz = make_state(profile, {{0, {1, 0}}, {7, {1, 0}}});
  for (int mode = 0; mode < 3; ++mode) {
    CHECK_FALSE(oracle::unfolding_rank_one(ghz.tensor(), mode));
  }

  const PureState prod = random_product_state(profile, 13);
  for (int mode = 0; mode < 3; ++mode) {
    CHECK(oracle::unfolding_rank_one(prod.tensor(), mode));
  }

  // |0> x Bell(modes 1,2): mode 0 factors out, modes 1 and 2 do not.
  const PureState spectator =
      make_state(profile, {{0, {kInvSqrt2, 0}}, {3, {kInvSqrt2, 0}}});
  CHECK(oracle::unfolding_rank_one(spectator.tensor(), 0));
  CHECK_FALSE(oracle::unfolding_rank_one(spectator.tensor(), 1));
  CHECK_FALSE(oracle::unfolding_rank_one(spectator.tensor(), 2));
}

TEST_CASE("oracle and engine agree on pure separability") {
  for (const auto& dims :
       {std::vector<int>{2, 2, 2}, {2, 2, 3}, {2, 3, 4}, {2, 2, 2, 2}}) {
    DimensionProfile profile(dims);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PureState s = (seed % 2 == 0) ? random_product_state(profile, seed)
                                          : random_pure_state(profile, seed);
      CHECK(oracle::pure_separable(s.tensor()) == pure_is_separable(s));
    }
  }
}

TEST_CASE("build_separable_rank2") {
  DimensionProfile profile({2, 2, 2});
  const int i000[] = {0, 0, 0};
  const int i011[] = {0, 1, 1};
  const PureState s000 = basis_state(profile, i000);
  const PureState s011 = basis_state(profile, i011);

  SUBCASE("orthogonal products give a diagonal matrix") {
    const DensityMatrix rho = oracle::build_separable_rank2(s000, s011, 0.4);
    CHECK(rho.entries()(0, 0).real() == Approx(0.4));
    CHECK(rho.entries()(3, 3).real() == Approx(0.6));
    CHECK(rho.entries().cwiseAbs().sum() == Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("nonorthogonal products stay separable with entangled eigenvectors") {
    const PureState a = random_product_state(profile, 61);
    const PureState b = random_product_state(profile, 62);
    const DensityMatrix dense = oracle::build_separable_rank2(a, b, 0.45);
    const RankTwoState rho = rank2_eigendecompose(dense);
    // Generic nonorthogonal product pairs mix into entangled eigenvectors.
    CHECK(generalized_concurrence(rho.e1()) > 1e-3);
    CHECK(generalized_concurrence(rho.e2()) > 1e-3);
    CHECK(decide(rho).separable());
  }

  SUBCASE("identical states and degenerate weights are rejected") {
    CHECK_THROWS_AS(oracle::build_separable_rank2(s000, s000, 0.4), IdenticalStates);
    CHECK_THROWS_AS(oracle::build_separable_rank2(s000, s011, 0.0), Error);
    CHECK_THROWS_AS(oracle::build_separable_rank2(s000, s011, 1.0), Error);
  }
}

TEST_CASE("ground-truth mixtures are decided separable") {
  for (const auto& dims : {std::vector<int>{2, 2, 2}, {2, 2, 3}}) {
    DimensionProfile profile(dims);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const PureState a = random_product_state(profile, testing::mix_seed(seed, 1));
      const PureState b = random_product_state(profile, testing::mix_seed(seed, 2));
      const double w = testing::uniform_in(testing::mix_seed(seed, 3), 0.1, 0.9);
      const RankTwoState rho =
          rank2_eigendecompose(oracle::build_separable_rank2(a, b, w));
      CHECK(decide(rho).separable());
    }
  }
}

TEST_CASE("tripartite transcription matches the generic machinery") {
  SUBCASE("the worked triple is reproduced") {
    DimensionProfile profile({2, 2, 2});
    const PureState e1 =
        make_state(profile, {{0, {kInvSqrt2, 0}}, {3, {kInvSqrt2, 0}}});
    const PureState e2 =
        make_state(profile, {{0, {kInvSqrt2, 0}}, {3, {-kInvSqrt2, 0}}});
    bool found = false;
    for (const auto& r : oracle::eq5_transcription(e1, e2)) {
      if (r.s == 1 && r.u == std::array<int, 3>{0, 0, 0} &&
          r.v == std::array<int, 3>{0, 1, 1}) {
        found = true;
        CHECK(r.alpha.real() == Approx(-0.5).epsilon(1e-12));
        CHECK(std::abs(r.beta) <= 1e-12);
        CHECK(r.gamma.real() == Approx(0.5).epsilon(1e-12));
      }
    }
    CHECK(found);
  }

  SUBCASE("two product eigenvectors leave every record near zero") {
    DimensionProfile profile({2, 2, 2});
    const PureState e1 = random_product_state(profile, 71);
    const PureState e2 = random_product_state(profile, 72);
    for (const auto& r : oracle::eq5_transcription(e1, e2)) {
      CHECK(std::abs(r.alpha) <= 1e-14);
      CHECK(std::abs(r.gamma) <= 1e-14);
    }
  }

  SUBCASE("random eigenpairs agree record by record") {
    for (const auto& dims : {std::vector<int>{2, 2, 2}, {2, 2, 3}, {2, 3, 4}}) {
      DimensionProfile profile(dims);
      const int s_to_mask[] = {0, 0b011, 0b101, 0b001};

      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto [e1, e2] = testing::random_orthonormal_pair(profile, seed);

        std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>, CoefficientTriple>
            generic;
        for (const auto& t : coefficient_triples(e1, e2)) {
          generic.emplace(std::make_tuple(t.family.cls.mask(), t.family.u, t.family.v), t);
        }

        const auto records = oracle::eq5_transcription(e1, e2);
        // Each unordered generic family appears as two ordered records.
        CHECK(records.size() == 2 * generic.size());

        double worst = 0.0;
        for (const auto& r : records) {
          const std::size_t u = profile.linear_index(r.u);
          const std::size_t v = profile.linear_index(r.v);
          const auto key = std::make_tuple(static_cast<std::uint32_t>(s_to_mask[r.s]),
                                           std::min(u, v), std::max(u, v));
          auto it = generic.find(key);
          REQUIRE(it != generic.end());
          worst = std::max(worst, std::abs(it->second.alpha - r.alpha));
          worst = std::max(worst, std::abs(it->second.beta - r.beta));
          worst = std::max(worst, std::abs(it->second.gamma - r.gamma));
        }
        CHECK(worst <= 1e-12);
      }
    }
  }

  SUBCASE("needs exactly three modes") {
    DimensionProfile profile({2, 2, 2, 2});
    const auto [e1, e2] = testing::random_orthonormal_pair(profile, 1);
    CHECK_THROWS_AS(oracle::eq5_transcription(e1, e2), DimensionMismatch);
  }
}
