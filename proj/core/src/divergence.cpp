#include "azr/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace azr {
namespace {

// Restriction of h_ψ^{a} · h_φ^{b} to the supports:
// diag(p^a) P_ψ* P_φ diag(q^b), whose singular values are those of the full
// product. Kernels are removed exactly rather than through round-off.
struct SupportFactor {
  Matrix f;
  double floor;  // round-off level of σ(f): size·eps·max(p^a)·max(q^b)
};

SupportFactor support_factor(const PsdElement& psi, double psi_exponent, const PsdElement& phi,
                             double phi_exponent) {
  const SupportBasis sp = support_basis(psi);
  const SupportBasis sf = support_basis(phi);
  Matrix f = sp.basis.adjoint() * sf.basis;
  std::vector<double> right(f.cols());
  double right_max = 0.0;
  for (std::size_t j = 0; j < f.cols(); ++j) {
    right[j] = std::pow(sf.values[j], phi_exponent);
    right_max = std::max(right_max, right[j]);
  }
  double left_max = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    const double left = std::pow(sp.values[i], psi_exponent);
    left_max = std::max(left_max, left);
    for (std::size_t j = 0; j < f.cols(); ++j) f(i, j) *= left * right[j];
  }
  const double size = static_cast<double>(psi.dim());
  return {std::move(f), size * std::numeric_limits<double>::epsilon() * left_max * right_max};
}

void check_residual(double residual, double scale, const DivergenceOptions& options, const char* what) {
  if (residual > options.residual_tolerance * std::max(scale, 1e-300)) {
    throw DomainError(std::string(what) + ": identity residual " + std::to_string(residual) +
                      " exceeds tolerance");
  }
}

}  // namespace

DivergenceParams::DivergenceParams(double alpha, double z) : alpha_(alpha), z_(z) {
  if (!(alpha > 0.0) || std::isinf(alpha)) throw DomainError("alpha must be finite and > 0");
  if (!(z > 0.0) || std::isinf(z)) throw DomainError("z must be finite and > 0");
  if (std::abs(alpha - 1.0) < kMinDistanceFromOne) throw DomainError("alpha must differ from 1");
}

StatePair::StatePair(PsdElement psi, PsdElement phi) : psi_(std::move(psi)), phi_(std::move(phi)) {
  if (psi_.dim() != phi_.dim()) {
    throw DimensionError("StatePair: dim(psi) = " + std::to_string(psi_.dim()) +
                         " but dim(phi) = " + std::to_string(phi_.dim()));
  }
}

bool support_contained(const PsdElement& psi, const PsdElement& phi, double tolerance) {
  if (psi.dim() != phi.dim()) throw DimensionError("support_contained: dimension mismatch");
  const SupportBasis sp = support_basis(psi);
  if (sp.values.empty()) return true;
  const Matrix leak = (Matrix::identity(phi.dim()) - support_projection(phi)) * sp.basis;
  const auto sv = singular_values(leak);
  return sv.empty() || sv.front() <= tolerance;
}

ExtendedNonneg q_alpha_z(const StatePair& pair, const DivergenceParams& params,
                         const DivergenceOptions& options) {
  if (pair.psi().is_zero()) return ExtendedNonneg::finite(0.0);
  if (!params.below_one()) {
    const auto witness = solve_identity_x(pair, params, options);
    if (!witness) return ExtendedNonneg::infinity();
    return ExtendedNonneg::finite(witness->norm_power);
  }
  if (pair.phi().is_zero()) return ExtendedNonneg::finite(0.0);
  const double alpha = params.alpha();
  const double z = params.z();
  const auto sf = support_factor(pair.psi(), alpha / (2.0 * z), pair.phi(), (1.0 - alpha) / (2.0 * z));
  return ExtendedNonneg::finite(schatten_power_sum(sf.f, 2.0 * z, sf.floor));
}

double divergence_from_q(ExtendedNonneg q, double psi_weight, double alpha) {
  if (!(psi_weight > 0.0)) throw DomainError("D is undefined for psi = 0");
  return std::log(q.as_double() / psi_weight) / (alpha - 1.0);
}

double d_alpha_z(const StatePair& pair, const DivergenceParams& params, const DivergenceOptions& options) {
  if (pair.psi().is_zero()) throw DomainError("D is undefined for psi = 0");
  return divergence_from_q(q_alpha_z(pair, params, options), pair.psi_weight(), params.alpha());
}

std::optional<IdentityWitness> solve_identity_x(const StatePair& pair, const DivergenceParams& params,
                                                const DivergenceOptions& options) {
  if (params.below_one()) throw DomainError("solve_identity_x requires alpha > 1");
  if (!support_contained(pair.psi(), pair.phi(), options.support_tolerance)) return std::nullopt;
  const double alpha = params.alpha();
  const double z = params.z();
  const std::size_t n = pair.dim();

  const SupportBasis sf = support_basis(pair.phi());
  const auto factor = support_factor(pair.psi(), alpha / (2.0 * z), pair.phi(), (1.0 - alpha) / (2.0 * z));
  const Matrix& f = factor.f;
  const Matrix x = sf.basis * (f.adjoint() * f) * sf.basis.adjoint();

  const Matrix lhs = mat_pow(pair.psi(), alpha / z).matrix();
  const Matrix g = mat_pow(pair.phi(), (alpha - 1.0) / (2.0 * z)).matrix();
  const double residual = n == 0 ? 0.0 : max_abs_diff(lhs, g * x * g);
  check_residual(residual, std::max(lhs.max_abs(), g.max_abs() * g.max_abs() * x.max_abs()), options,
                 "solve_identity_x");

  double norm_power = 0.0;
  for (double sigma : singular_values(f)) norm_power += std::pow(sigma, 2.0 * z);
  return IdentityWitness{IdentityWitness::Orientation::sandwich, x, residual, norm_power};
}

std::optional<IdentityWitness> solve_identity_y(const StatePair& pair, const DivergenceParams& params,
                                                const DivergenceOptions& options) {
  if (params.below_one()) throw DomainError("solve_identity_y requires alpha > 1");
  if (!support_contained(pair.psi(), pair.phi(), options.support_tolerance)) return std::nullopt;
  const double alpha = params.alpha();
  const double z = params.z();

  const Matrix lhs = mat_pow(pair.psi(), alpha / (2.0 * z)).matrix();
  const Matrix g = mat_pow(pair.phi(), (alpha - 1.0) / (2.0 * z)).matrix();
  const Matrix g_inv = mat_pow(pair.phi(), (1.0 - alpha) / (2.0 * z)).matrix();
  const Matrix y = lhs * g_inv;
  const double residual = pair.dim() == 0 ? 0.0 : max_abs_diff(lhs, y * g);
  check_residual(residual, std::max(lhs.max_abs(), y.max_abs() * g.max_abs()), options, "solve_identity_y");

  return IdentityWitness{IdentityWitness::Orientation::right_factor, y, residual,
                         schatten_power_sum(y, 2.0 * z)};
}

ExtendedNonneg petz_q(const StatePair& pair, double alpha, const DivergenceOptions& options) {
  const DivergenceParams params(alpha, 1.0);
  if (pair.psi().is_zero()) return ExtendedNonneg::finite(0.0);
  if (alpha < 1.0) {
    const double t =
        trace_product(mat_pow(pair.psi(), alpha).matrix(), mat_pow(pair.phi(), 1.0 - alpha).matrix()).real();
    return ExtendedNonneg::finite(std::max(t, 0.0));
  }
  if (!support_contained(pair.psi(), pair.phi(), options.support_tolerance)) return ExtendedNonneg::infinity();
  const Matrix lhs = mat_pow(pair.psi(), alpha / 2.0).matrix();
  const Matrix eta = lhs * mat_pow(pair.phi(), (1.0 - alpha) / 2.0).matrix();
  const Matrix g = mat_pow(pair.phi(), (alpha - 1.0) / 2.0).matrix();
  check_residual(max_abs_diff(lhs, eta * g), std::max(lhs.max_abs(), eta.max_abs() * g.max_abs()), options,
                 "petz_q");
  const double fro = eta.frobenius_norm();
  return ExtendedNonneg::finite(fro * fro);
}

ExtendedNonneg sandwiched_q(const StatePair& pair, double alpha, const DivergenceOptions& options) {
  const DivergenceParams params(alpha, alpha);
  if (pair.psi().is_zero()) return ExtendedNonneg::finite(0.0);
  if (alpha < 1.0) {
    const SupportBasis sf = support_basis(pair.phi());
    if (sf.values.empty()) return ExtendedNonneg::finite(0.0);
    Matrix right = sf.basis;
    for (std::size_t j = 0; j < right.cols(); ++j) {
      const double s = std::pow(sf.values[j], (1.0 - alpha) / (2.0 * alpha));
      for (std::size_t i = 0; i < right.rows(); ++i) right(i, j) *= s;
    }
    const Matrix x = mat_pow(pair.psi(), 0.5).matrix() * right;
    const double floor = 2.0 * static_cast<double>(pair.dim()) * std::numeric_limits<double>::epsilon() *
                         std::sqrt(pair.psi().max_eigenvalue()) *
                         std::pow(sf.values.back(), (1.0 - alpha) / (2.0 * alpha));
    return ExtendedNonneg::finite(schatten_power_sum(x, 2.0 * alpha, floor));
  }
  if (!support_contained(pair.psi(), pair.phi(), options.support_tolerance)) return ExtendedNonneg::infinity();
  // Invert the symmetric Kosaki embedding with exponent p = α on s(φ).
  const Matrix inv = mat_pow(pair.phi(), -(alpha - 1.0) / (2.0 * alpha)).matrix();
  const Matrix a = inv * pair.psi().matrix() * inv;
  const Matrix back = kosaki_embed(a, pair.phi(), alpha);
  const double g = std::pow(pair.phi().max_eigenvalue(), (alpha - 1.0) / (2.0 * alpha));
  check_residual(max_abs_diff(back, pair.psi().matrix()), std::max(pair.psi().matrix().max_abs(), g * g * a.max_abs()),
                 options, "sandwiched_q");
  return ExtendedNonneg::finite(schatten_power_sum(a, alpha));
}

StatePair direct_sum(const StatePair& a, const StatePair& b) {
  return {PsdElement::from_product(direct_sum(a.psi().matrix(), b.psi().matrix())),
          PsdElement::from_product(direct_sum(a.phi().matrix(), b.phi().matrix()))};
}

StatePair tensor(const StatePair& a, const StatePair& b) {
  return {PsdElement::from_product(kron(a.psi().matrix(), b.psi().matrix())),
          PsdElement::from_product(kron(a.phi().matrix(), b.phi().matrix()))};
}

}  // namespace azr
