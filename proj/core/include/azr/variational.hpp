#pragma once

#include <cstdint>
#include <optional>

#include "azr/divergence.hpp"

namespace azr {

/// The two trace terms of a variational objective and their weighted combination.
struct VariationalTerms {
  double psi_term;  ///< tr((a^{1/2} h_ψ^{α/z} a^{1/2})^{z/α})
  double phi_term;  ///< tr((a^{∓1/2} h_φ^{|1−α|/z} a^{∓1/2})^{z/|1−α|})
  double value;
};

/// α·psi_term + (1−α)·phi_term with the φ term built from a^{-1/2}.
/// Requires 0 < α < 1 and a strictly positive (λ_min > 1e-12·λ_max);
/// throws DomainError otherwise. Always ≥ Q_{α,z}(ψ‖φ).
VariationalTerms objective_lower_terms(const PsdElement& a, const StatePair& pair,
                                       const DivergenceParams& params);
double objective_lower(const PsdElement& a, const StatePair& pair, const DivergenceParams& params);

/// α·psi_term − (α−1)·phi_term with the φ term built from a^{1/2}.
/// Requires α > 1; any psd a is admissible. Always ≤ Q_{α,z}(ψ‖φ).
VariationalTerms objective_upper_terms(const PsdElement& a, const StatePair& pair,
                                       const DivergenceParams& params);
double objective_upper(const PsdElement& a, const StatePair& pair, const DivergenceParams& params);

/// ε = 1e-8·(tr h_ψ + tr h_φ)
double default_regularization(const StatePair& pair);
/// (ψ + εφ, φ + εψ)
StatePair regularize(const StatePair& pair, double epsilon);

/// a₀ = h_ψ^{−α/2z} (h_ψ^{α/2z} h_φ^{(1−α)/z} h_ψ^{α/2z})^α h_ψ^{−α/2z}.
/// Both states must be faithful unless a regularization ε is supplied, in which
/// case the witness is built for regularize(pair, ε). Throws DomainError for
/// non-faithful input without regularization.
PsdElement closed_form_witness(const StatePair& pair, const DivergenceParams& params,
                               std::optional<double> regularization = std::nullopt);

struct VariationalProbe {
  PsdElement a;
  double objective_value;
  std::optional<double> gradient_norm;
  int iterations = 0;
  bool budget_exhausted = false;
};

struct OptimizerOptions {
  enum class Start { identity, closed_form, random };
  int budget = 2000;                ///< maximum iterations
  Start start = Start::identity;
  std::uint64_t seed = 0;           ///< used by Start::random only
  double fd_step = 1e-5;            ///< relative finite-difference step
  double gradient_tolerance = 1e-9; ///< relative to max(1, |f|)
};

/// Gradient descent over a = exp(H), H Hermitian, with central finite
/// difference gradients, Barzilai–Borwein trial steps and Armijo backtracking.
/// Stops on a small gradient, on five consecutive negligible decreases, or when
/// the budget runs out (budget_exhausted is then set).
/// Requires 0 < α < 1.
VariationalProbe minimize_lower(const StatePair& pair, const DivergenceParams& params,
                                const OptimizerOptions& options = {});
/// Ascent counterpart for objective_upper. Requires α > 1.
VariationalProbe maximize_upper(const StatePair& pair, const DivergenceParams& params,
                                const OptimizerOptions& options = {});

}  // namespace azr
