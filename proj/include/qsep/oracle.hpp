#pragma once

#include <array>
#include <vector>

#include "qsep/states.hpp"

namespace qsep {
/// Brute-force verification tools. Each oracle is written with independent
/// explicit loops, not in terms of the main modules, so that a bug in the
/// engine and a bug in its check cannot cancel.
namespace oracle {

/// True iff every 2x2 minor of the mode-k unfolding (an N_k x (total/N_k)
/// matrix) is at most tol times the squared largest entry magnitude.
bool unfolding_rank_one(const CoefficientTensor& tensor, int mode,
                        double tol = 1e-8);

/// True iff unfolding_rank_one holds for every mode, i.e. the tensor is a
/// full outer product.
bool pure_separable(const CoefficientTensor& tensor, double tol = 1e-8);

/// Dense matrix of weight P(a) + (1-weight) P(b) for two distinct product
/// states; separable by construction. Throws IdenticalStates when the states
/// coincide up to a phase.
DensityMatrix build_separable_rank2(const PureState& a, const PureState& b,
                                    double weight);

/// Literal tripartite transcription record: equation family s in {1,2,3}
/// over the ordered index tuple (u, v) = ((i,j,k), (p,q,m)).
struct Eq5Record {
  int s = 0;
  std::array<int, 3> u{}, v{};
  Complex alpha, beta, gamma;
};

/// All nontrivial tripartite coefficient triples via six explicit nested
/// loops, used to validate the generic family machinery. Requires M = 3.
std::vector<Eq5Record> eq5_transcription(const PureState& e1, const PureState& e2);

}  // namespace oracle
}  // namespace qsep
