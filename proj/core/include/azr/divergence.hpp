#pragma once

#include <optional>

#include "azr/extended.hpp"
#include "azr/linalg.hpp"

namespace azr {

/// (α, z) with α, z > 0 finite and |α − 1| ≥ 1e-9.
class DivergenceParams {
 public:
  static constexpr double kMinDistanceFromOne = 1e-9;

  /// Throws DomainError when the invariants fail.
  DivergenceParams(double alpha, double z);

  double alpha() const { return alpha_; }
  double z() const { return z_; }
  bool below_one() const { return alpha_ < 1.0; }

 private:
  double alpha_;
  double z_;
};

/// Densities of ψ and φ on the same matrix algebra.
class StatePair {
 public:
  /// Throws DimensionError when the dimensions differ.
  StatePair(PsdElement psi, PsdElement phi);

  const PsdElement& psi() const { return psi_; }
  const PsdElement& phi() const { return phi_; }
  std::size_t dim() const { return psi_.dim(); }
  /// ψ(1) = tr h_ψ
  double psi_weight() const { return psi_.trace(); }
  /// φ(1) = tr h_φ
  double phi_weight() const { return phi_.trace(); }

  StatePair scaled(double lambda, double mu) const {
    return {psi_.scaled(lambda), phi_.scaled(mu)};
  }

 private:
  PsdElement psi_;
  PsdElement phi_;
};

/// Solution of h_ψ^{α/z} = G x G (sandwich) or h_ψ^{α/2z} = y G (right factor),
/// G = h_φ^{(α−1)/2z}.
struct IdentityWitness {
  enum class Orientation { sandwich, right_factor };
  Orientation which;
  Matrix matrix;      ///< x (psd, supported in s(φ)) or y (y·s(φ) = y)
  double residual;    ///< ‖lhs − rhs‖_∞ of the defining identity
  double norm_power;  ///< ‖x‖_z^z or ‖y‖_{2z}^{2z}
};

struct DivergenceOptions {
  /// s(ψ) ≤ s(φ) iff ‖(I − s(φ)) s(ψ)‖_∞ ≤ support_tolerance.
  double support_tolerance = 1e-8;
  /// Identity residuals are accepted up to this multiple of the larger of ‖lhs‖_∞
  /// and the size of the factors multiplied to reconstruct it.
  double residual_tolerance = 1e-6;
};

/// s(ψ) ≤ s(φ) within the projection tolerance.
bool support_contained(const PsdElement& psi, const PsdElement& phi, double tolerance = 1e-8);

/// Q_{α,z}(ψ‖φ) ∈ [0, ∞].
ExtendedNonneg q_alpha_z(const StatePair& pair, const DivergenceParams& params,
                         const DivergenceOptions& options = {});

/// D_{α,z}(ψ‖φ) = log(Q/ψ(1)) / (α − 1), as an extended real (+inf allowed).
/// Throws DomainError when ψ = 0.
double d_alpha_z(const StatePair& pair, const DivergenceParams& params,
                 const DivergenceOptions& options = {});

/// Converts a Q value into D for a given ψ(1); shared by every family.
double divergence_from_q(ExtendedNonneg q, double psi_weight, double alpha);

/// x = G⁺ h_ψ^{α/z} G⁺ when s(ψ) ≤ s(φ); empty otherwise. Requires α > 1.
std::optional<IdentityWitness> solve_identity_x(const StatePair& pair, const DivergenceParams& params,
                                                const DivergenceOptions& options = {});

/// y = h_ψ^{α/2z} G⁺ when s(ψ) ≤ s(φ); empty otherwise. Requires α > 1.
std::optional<IdentityWitness> solve_identity_y(const StatePair& pair, const DivergenceParams& params,
                                                const DivergenceOptions& options = {});

/// Petz Rényi quantity: tr(h_ψ^α h_φ^{1−α}) for α < 1, ‖η‖_2² with
/// h_ψ^{α/2} = η h_φ^{(α−1)/2} for α > 1.
ExtendedNonneg petz_q(const StatePair& pair, double alpha, const DivergenceOptions& options = {});

/// Sandwiched Rényi quantity. α < 1 through ‖h_ψ^{1/2} h_φ^{(1−α)/2α}‖_{2α}^{2α};
/// α > 1 through the Kosaki-embedded norm ‖a‖_α^α where h_ψ = h_φ^{1/2q} a h_φ^{1/2q}.
ExtendedNonneg sandwiched_q(const StatePair& pair, double alpha, const DivergenceOptions& options = {});

/// Block-diagonal assembly (ψ₁ ⊕ ψ₂, φ₁ ⊕ φ₂).
StatePair direct_sum(const StatePair& a, const StatePair& b);
/// Kronecker assembly (ψ₁ ⊗ ψ₂, φ₁ ⊗ φ₂).
StatePair tensor(const StatePair& a, const StatePair& b);

}  // namespace azr
