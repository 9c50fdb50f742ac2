#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "azr/divergence.hpp"
#include "azr/verify/suite.hpp"

namespace azr::verify::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One factory per theorem clause, checked against kTheoremClauses in registry.cpp.
#define AZR_THEOREM_CLAUSES(X)                                                                       \
  X(scaling_lt1, "scaling/lt1")                                                                      \
  X(direct_sum_lt1, "direct-sum/lt1")                                                                \
  X(order_lt1, "order/lt1")                                                                          \
  X(continuity_lt1, "continuity/lt1")                                                                \
  X(eps_limit_lt1, "eps-limit/lt1")                                                                  \
  X(variational_lt1, "variational/lt1")                                                              \
  X(positivity_lt1, "positivity/lt1")                                                                \
  X(dpi_lt1, "dpi/lt1")                                                                              \
  X(concavity_lt1, "concavity/lt1")                                                                  \
  X(z_monotone_lt1, "z-monotone/lt1")                                                                \
  X(scaling_gt1, "scaling/gt1")                                                                      \
  X(direct_sum_gt1, "direct-sum/gt1")                                                                \
  X(order_gt1, "order/gt1")                                                                          \
  X(lsc_gt1, "lsc/gt1")                                                                              \
  X(eps_limit_gt1, "eps-limit/gt1")                                                                  \
  X(variational_gt1, "variational/gt1")                                                              \
  X(positivity_gt1, "positivity/gt1")

#define AZR_DECLARE_CLAUSE(id, name) Property clause_##id();
AZR_THEOREM_CLAUSES(AZR_DECLARE_CLAUSE)
#undef AZR_DECLARE_CLAUSE

void add_lemma_properties(std::vector<Property>& out);
void add_divergence_properties(std::vector<Property>& out);
void add_derived_properties(std::vector<Property>& out);
void add_channel_properties(std::vector<Property>& out);
void add_exploration_properties(std::vector<Property>& out);

// ---- sampling -------------------------------------------------------------

/// Smallest z drawn by any generator.
inline constexpr double kMinZ = 0.2;
/// Largest max(α, |1−α|)/z drawn; past it Q carries no correct digits in double precision.
inline constexpr double kMaxExponent = 8.0;

inline double min_z(double alpha) { return std::max(kMinZ, std::max(alpha, std::abs(1.0 - alpha)) / kMaxExponent); }

inline double alpha_below(Rng& rng) { return uniform(rng, 0.05, 0.95); }
inline double alpha_above(Rng& rng) { return uniform(rng, 1.05, 4.0); }
/// z ≥ max(lo, min_z(α)), spread over a few units.
inline double z_from(Rng& rng, double alpha, double lo) {
  const double from = std::max(lo, min_z(alpha));
  return uniform(rng, from, from + 3.0);
}
inline double z_any(Rng& rng, double alpha) { return uniform(rng, min_z(alpha), 4.0); }
inline double weight(Rng& rng) { return std::exp(uniform(rng, std::log(0.2), std::log(5.0))); }

/// Mixed-rank density with a random total weight.
PsdElement any_state(Rng& rng, std::size_t n);
PsdElement faithful_state(Rng& rng, std::size_t n);
/// Faithful and away from the boundary: mixture with I/n.
PsdElement tame_state(Rng& rng, std::size_t n);
/// Random density whose support lies inside s(phi).
PsdElement state_in_support(Rng& rng, const PsdElement& phi);
/// B^{1/2} K B^{1/2} with 0 ≤ K ≤ I, hence ≤ B.
Matrix below(Rng& rng, const PsdElement& b);
/// For α > 1: ψ inside s(φ) three times out of four.
StatePair pair_above(Rng& rng, std::size_t n);
StatePair pair_below(Rng& rng, std::size_t n);

Instance& put_pair(Instance& inst, const StatePair& pair, const std::string& psi = "psi",
                   const std::string& phi = "phi");
StatePair get_pair(const Instance& inst, const std::string& psi = "psi", const std::string& phi = "phi");
DivergenceParams get_params(const Instance& inst);

/// A unital positive map with output dimension n (standard or random).
Channel random_unital_map(Rng& rng, std::size_t n, bool allow_non_cp);

// ---- comparisons ----------------------------------------------------------

/// ψ(1)^α φ(1)^{1−α}, the natural size of Q.
double natural_scale(const StatePair& pair, double alpha);

/// Violation of a ≤ b, relative to max(|a|, |b|, floor).
double leq(double a, double b, double floor = 0.0);
/// |a − b| relative to max(|a|, |b|, floor).
double equal(double a, double b, double floor = 0.0);

/// The same on [0, ∞]; ∞ against ∞ counts as equal.
double leq(ExtendedNonneg a, ExtendedNonneg b, double floor = 0.0);
double equal(ExtendedNonneg a, ExtendedNonneg b, double floor = 0.0);

std::string describe(ExtendedNonneg a, ExtendedNonneg b);

/// Q along (ψ + δK, φ + δK'), δ = 10^{-2}, …, 10^{-14}, with K, K' under "k_psi", "k_phi".
std::vector<ExtendedNonneg> perturbed_profile(const Instance& inst, const DivergenceParams& params);

/// Lower semicontinuity along the perturbed profile. A finite limit may be
/// approached from below only at rate δ^{1/(2 max(1,z))}; an infinite one must
/// be approached by a growing sequence.
Outcome lsc_outcome(const Instance& inst);

}  // namespace azr::verify::detail
