#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "azr/linalg.hpp"

namespace azr {

/// Linear map γ: M_in → M_out stored as an out²×in² matrix acting on
/// row-major vectorizations, vec(b)[k·in + l] = b(k, l).
class LinearMap {
 public:
  LinearMap(std::size_t in_dim, std::size_t out_dim, Matrix representation);
  /// Tabulates f on the matrix units of M_in.
  static LinearMap from_function(std::size_t in_dim, std::size_t out_dim,
                                 const std::function<Matrix(const Matrix&)>& f);

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  const Matrix& representation() const { return rep_; }

  Matrix apply(const Matrix& b) const;
  /// The trace-dual map M_out → M_in: tr(predual(h)·b) = tr(h·apply(b)).
  Matrix apply_predual(const Matrix& h) const;

 private:
  std::size_t in_;
  std::size_t out_;
  Matrix rep_;
};

/// Unital positive map γ: N → M on observables, N = M_in, M = M_out.
/// Kraus form γ(b) = Σ K_i b K_i* (K_i of shape out × in) is completely
/// positive; an explicit LinearMap is only spot-checked for positivity.
class Channel {
 public:
  static constexpr double kDefaultUnitalityTolerance = 1e-9;

  /// Throws DimensionError on inconsistent shapes and DomainError when
  /// Σ K_i K_i* deviates from I by more than the tolerance.
  static Channel from_kraus(std::vector<Matrix> kraus,
                            double unitality_tolerance = kDefaultUnitalityTolerance);
  /// Also checks positivity on 16 seeded random states; DomainError on failure.
  static Channel from_linear_map(LinearMap map, double unitality_tolerance = kDefaultUnitalityTolerance);

  std::size_t in_dim() const { return map_.in_dim(); }
  std::size_t out_dim() const { return map_.out_dim(); }
  bool completely_positive() const { return kraus_.has_value(); }
  const std::optional<std::vector<Matrix>>& kraus() const { return kraus_; }
  const LinearMap& linear_map() const { return map_; }
  double unitality_tolerance() const { return tolerance_; }

  /// γ(b) for b on N.
  Matrix apply_dual(const Matrix& b) const;
  /// γ_*(h) for a density h on M; trace preserving.
  Matrix apply_predual(const Matrix& h) const;
  PsdElement apply_predual(const PsdElement& h) const;

 private:
  Channel(LinearMap map, std::optional<std::vector<Matrix>> kraus, double tolerance)
      : map_(std::move(map)), kraus_(std::move(kraus)), tolerance_(tolerance) {}

  LinearMap map_;
  std::optional<std::vector<Matrix>> kraus_;
  double tolerance_;
};

/// ‖γ(I) − I‖_∞ entrywise.
double unitality_residual(const Channel& ch);

/// Seeded Gaussian Kraus family normalized so that Σ K_i K_i* = I.
/// Throws DomainError when kraus_count · in_dim < out_dim.
Channel random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, std::uint64_t seed);

Channel identity_channel(std::size_t n);
/// Dephasing in the computational basis.
Channel pinching_channel(std::size_t n);
/// γ(b) = (1 − p) b + p (tr b / n) I; p = 1 is completely depolarizing.
Channel depolarizing_channel(std::size_t n, double p);
/// γ(b) = b ⊗ I_k, whose predual is the partial trace over the second factor.
Channel partial_trace_channel(std::size_t n, std::size_t k);
/// γ(a) = a ⊕ a.
Channel doubling_channel(std::size_t n);
/// b ↦ bᵀ: unital and positive but not completely positive.
Channel transpose_map(std::size_t n);

/// The φ-adjoint γ*_φ: s(φ)Ms(φ) → s(φ∘γ)Ns(φ∘γ) realized as an explicit map.
struct RecoveryMap {
  LinearMap map;            ///< M_out → M_in on observables
  PsdElement phi;           ///< reference density on M
  PsdElement phi_gamma;     ///< γ_*(h_φ) on N
  Matrix domain_support;    ///< s(φ)
  Matrix range_support;     ///< s(φ∘γ)

  Matrix apply(const Matrix& a) const { return map.apply(a); }
};

/// γ*_φ(a) = G⁺ γ_*(h_φ^{1/2} a h_φ^{1/2}) G⁺ with G = γ_*(h_φ)^{1/2}.
/// Accepts any linear map so that a recovery map can itself be recovered.
/// Throws DomainError for φ = 0.
RecoveryMap petz_recovery(const LinearMap& gamma, const PsdElement& phi);
RecoveryMap petz_recovery(const Channel& ch, const PsdElement& phi);

/// ‖h_{φ∘γ}^{1/2} γ*_φ(a) h_{φ∘γ}^{1/2} − γ_*(h_φ^{1/2} a h_φ^{1/2})‖_∞.
double recovery_identity_residual(const Channel& ch, const RecoveryMap& r, const Matrix& a);

struct InequalityCheck {
  double lhs;
  double rhs;
  bool ok;
};

/// ‖h_φ^{1/2p} γ(b) h_φ^{1/2p}‖_p against ‖h_{φ∘γ}^{1/2p} b h_{φ∘γ}^{1/2p}‖_p,
/// with b first compressed to s(φ∘γ). Requires p ≥ 1 (DomainError otherwise).
InequalityCheck check_sandwich_contraction(const Channel& ch, const PsdElement& phi, const Matrix& b, double p);

/// Tr((Φ(B)* A^{1/p} Φ(B))^p) against Tr((B* Φ*(A)^{1/p} B)^p) for the
/// dual Φ = γ (Kraus form required) with B replaced by s(Φ*(A))·B.
/// Requires p ≥ 1 and A positive invertible.
InequalityCheck check_carlen_zhang(const Channel& ch, const PsdElement& a, const Matrix& b, double p);

/// λ_min(γ(b⁻¹) − γ(b)⁻¹) for positive invertible b.
double choi_gap(const Channel& ch, const PsdElement& b);

}  // namespace azr
