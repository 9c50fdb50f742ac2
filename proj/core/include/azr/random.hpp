#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "azr/divergence.hpp"

namespace azr {

using Rng = std::mt19937_64;

/// splitmix64 over (seed, name, index); independent stream per trial.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
/// Entries with i.i.d. standard complex Gaussian real and imaginary parts.
Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols);
Matrix random_hermitian(Rng& rng, std::size_t n);
/// Haar-ish unitary from Gram–Schmidt on a Gaussian matrix.
Matrix random_unitary(Rng& rng, std::size_t n);

struct StateShape {
  std::size_t rank = 0;    ///< 0 means full rank
  bool normalize = true;   ///< trace one
};
/// h = G*G with G of size rank × n, so rank-deficient shapes have an exact kernel.
PsdElement random_state(Rng& rng, std::size_t n, StateShape shape = {});
/// A random state whose rank is drawn from {1, …, n} with faithful states favoured.
PsdElement random_state_mixed_rank(Rng& rng, std::size_t n);

/// U diag(p) U*, U diag(q) U* with random probability vectors p, q.
/// Each weight is zeroed with probability zero_probability (keeping one nonzero).
struct CommutingPair {
  StatePair pair;
  std::vector<double> p;
  std::vector<double> q;
};
CommutingPair random_commuting_pair(Rng& rng, std::size_t n, double zero_probability = 0.0);

/// 0 ≤ K ≤ I, so B^{1/2} K B^{1/2} ≤ B.
PsdElement random_contraction(Rng& rng, std::size_t n);

}  // namespace azr
