#include "qsep/random.hpp"

#include <random>

#include "qsep/errors.hpp"

namespace qsep {

namespace {

std::mt19937_64 engine_for(std::uint64_t seed) { return std::mt19937_64(seed); }

Complex gaussian(std::mt19937_64& rng, std::normal_distribution<double>& dist) {
  const double re = dist(rng);
  const double im = dist(rng);
  return Complex{re, im};
}

}  // namespace

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionMismatch("unitary dimension must be positive");
  auto rng = engine_for(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = gaussian(rng, dist);
  }
  // Modified Gram-Schmidt on the columns.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      const Complex proj = m.col(k).dot(m.col(j));  // conjugates col(k)
      m.col(j) -= proj * m.col(k);
    }
    const double norm = m.col(j).norm();
    if (norm < 1e-12) {
      // A Gaussian matrix is singular with probability zero; re-draw the column.
      for (int i = 0; i < n; ++i) m(i, j) = gaussian(rng, dist);
      --j;
      continue;
    }
    m.col(j) /= norm;
  }
  return m;
}

PureState random_pure_state(const DimensionProfile& profile, std::uint64_t seed) {
  auto rng = engine_for(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<Complex> amps(profile.total_dim());
  for (Complex& a : amps) a = gaussian(rng, dist);
  return make_pure_state(CoefficientTensor(profile, std::move(amps)));
}

PureState random_product_state(const DimensionProfile& profile, std::uint64_t seed) {
  auto rng = engine_for(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<Complex>> factors(
      static_cast<std::size_t>(profile.mode_count()));
  for (int k = 0; k < profile.mode_count(); ++k) {
    auto& f = factors[static_cast<std::size_t>(k)];
    f.resize(static_cast<std::size_t>(profile.dim(k)));
    double n2 = 0.0;
    for (Complex& a : f) {
      a = gaussian(rng, dist);
      n2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (Complex& a : f) a *= scale;
  }
  return product_state(profile, factors);
}

PureState random_real_state(const DimensionProfile& profile, std::uint64_t seed) {
  auto rng = engine_for(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<Complex> amps(profile.total_dim());
  for (Complex& a : amps) a = Complex{dist(rng), 0.0};
  return make_pure_state(CoefficientTensor(profile, std::move(amps)));
}

}  // namespace qsep
