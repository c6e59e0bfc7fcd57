#include "qsep/oracle.hpp"

#include <cmath>

#include "qsep/errors.hpp"

namespace qsep::oracle {

namespace {
// The oracles enumerate exhaustively and are meant for desk-scale inputs.
constexpr std::size_t kOracleDimCap = 256;

void check_oracle_cap(const DimensionProfile& profile) {
  if (profile.total_dim() > kOracleDimCap) {
    throw Error("brute-force verification is capped at total dimension " +
                std::to_string(kOracleDimCap));
  }
}
}  // namespace

bool unfolding_rank_one(const CoefficientTensor& tensor, int mode, double tol) {
  const DimensionProfile& profile = tensor.profile();
  check_oracle_cap(profile);
  if (mode < 0 || mode >= profile.mode_count()) {
    throw DimensionMismatch("unfolding mode out of range");
  }
  const int rows = profile.dim(mode);
  const std::size_t cols = profile.total_dim() / static_cast<std::size_t>(rows);

  // Build the mode unfolding with its own index bookkeeping: column index
  // runs over the remaining modes in their profile order.
  std::vector<std::vector<Complex>> m(static_cast<std::size_t>(rows),
                                      std::vector<Complex>(cols));
  std::vector<int> multi(static_cast<std::size_t>(profile.mode_count()), 0);
  for (std::size_t col = 0; col < cols; ++col) {
    // Decode col into the non-mode digits, last mode fastest.
    std::size_t rest = col;
    for (int k = profile.mode_count() - 1; k >= 0; --k) {
      if (k == mode) continue;
      multi[static_cast<std::size_t>(k)] = static_cast<int>(rest % profile.dim(k));
      rest /= static_cast<std::size_t>(profile.dim(k));
    }
    for (int r = 0; r < rows; ++r) {
      multi[static_cast<std::size_t>(mode)] = r;
      m[static_cast<std::size_t>(r)][col] = tensor.amp(multi);
    }
  }

  double max_abs = 0.0;
  for (const auto& row : m) {
    for (const Complex& entry : row) max_abs = std::max(max_abs, std::abs(entry));
  }
  const double threshold = tol * std::max(max_abs * max_abs, 1e-300);

  for (int r1 = 0; r1 < rows; ++r1) {
    for (int r2 = r1 + 1; r2 < rows; ++r2) {
      for (std::size_t c1 = 0; c1 < cols; ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < cols; ++c2) {
          const Complex minor =
              m[static_cast<std::size_t>(r1)][c1] * m[static_cast<std::size_t>(r2)][c2] -
              m[static_cast<std::size_t>(r1)][c2] * m[static_cast<std::size_t>(r2)][c1];
          if (std::abs(minor) > threshold) return false;
        }
      }
    }
  }
  return true;
}

bool pure_separable(const CoefficientTensor& tensor, double tol) {
  for (int mode = 0; mode < tensor.profile().mode_count(); ++mode) {
    if (!unfolding_rank_one(tensor, mode, tol)) return false;
  }
  return true;
}

DensityMatrix build_separable_rank2(const PureState& a, const PureState& b,
                                    double weight) {
  if (!(weight > 0.0 && weight < 1.0)) {
    throw Error("mixture weight must lie strictly inside (0, 1)");
  }
  if (a.profile() != b.profile()) {
    throw DimensionMismatch("mixture of states on different profiles");
  }
  // Identical up to a phase means rank one, not two.
  if (std::abs(inner_product(a, b)) > 1.0 - 1e-12) {
    throw IdenticalStates("the two product states coincide up to a phase");
  }
  const std::pair<double, PureState> parts[] = {{weight, a}, {1.0 - weight, b}};
  return mixture(parts);
}

std::vector<Eq5Record> eq5_transcription(const PureState& e1, const PureState& e2) {
  const DimensionProfile& profile = e1.profile();
  check_oracle_cap(profile);
  if (profile.mode_count() != 3) {
    throw DimensionMismatch("the tripartite transcription needs exactly 3 modes");
  }
  if (e2.profile() != profile) {
    throw DimensionMismatch("eigenvectors on different profiles");
  }
  const int M = profile.dim(0), N = profile.dim(1), T = profile.dim(2);

  auto a1 = [&](int i, int j, int k) {
    const int multi[3] = {i, j, k};
    return e1.amp(multi);
  };
  auto a2 = [&](int i, int j, int k) {
    const int multi[3] = {i, j, k};
    return e2.amp(multi);
  };

  std::vector<Eq5Record> records;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < T; ++k)
        for (int p = 0; p < M; ++p)
          for (int q = 0; q < N; ++q)
            for (int m = 0; m < T; ++m) {
              // s = 1: swap the third index pair (k, m).
              if (!(i == p && j == q) && k != m) {
                Eq5Record r;
                r.s = 1;
                r.u = {i, j, k};
                r.v = {p, q, m};
                r.alpha = a2(i, j, k) * a2(p, q, m) - a2(i, j, m) * a2(p, q, k);
                r.beta = a2(i, j, k) * a1(p, q, m) + a1(i, j, k) * a2(p, q, m) -
                         a2(i, j, m) * a1(p, q, k) - a1(i, j, m) * a2(p, q, k);
                r.gamma = a1(i, j, k) * a1(p, q, m) - a1(i, j, m) * a1(p, q, k);
                records.push_back(r);
              }
              // s = 2: swap the second index pair (j, q).
              if (!(i == p && k == m) && j != q) {
                Eq5Record r;
                r.s = 2;
                r.u = {i, j, k};
                r.v = {p, q, m};
                r.alpha = a2(i, j, k) * a2(p, q, m) - a2(i, q, k) * a2(p, j, m);
                r.beta = a2(i, j, k) * a1(p, q, m) + a1(i, j, k) * a2(p, q, m) -
                         a2(i, q, k) * a1(p, j, m) - a1(i, q, k) * a2(p, j, m);
                r.gamma = a1(i, j, k) * a1(p, q, m) - a1(i, q, k) * a1(p, j, m);
                records.push_back(r);
              }
              // s = 3: swap the first index pair (i, p).
              if (!(j == q && k == m) && i != p) {
                Eq5Record r;
                r.s = 3;
                r.u = {i, j, k};
                r.v = {p, q, m};
                r.alpha = a2(i, j, k) * a2(p, q, m) - a2(p, j, k) * a2(i, q, m);
                r.beta = a2(i, j, k) * a1(p, q, m) + a1(i, j, k) * a2(p, q, m) -
                         a2(p, j, k) * a1(i, q, m) - a1(p, j, k) * a2(i, q, m);
                r.gamma = a1(i, j, k) * a1(p, q, m) - a1(p, j, k) * a1(i, q, m);
                records.push_back(r);
              }
            }
  return records;
}

}  // namespace qsep::oracle
