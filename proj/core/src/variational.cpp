#include "azr/variational.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace azr {
namespace {

constexpr double kPdFloor = 1e-12;

void require_positive_definite(const PsdElement& a) {
  if (a.dim() == 0) return;
  if (!(a.min_eigenvalue() > kPdFloor * a.max_eigenvalue()) || !(a.max_eigenvalue() > 0.0)) {
    throw DomainError("variational objective requires a positive invertible a");
  }
}

// Hermitian n×n ↔ n² real coordinates: diagonal, then Re/Im of the upper triangle.
std::vector<double> to_coordinates(const Matrix& h) {
  const std::size_t n = h.dim();
  std::vector<double> x;
  x.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) x.push_back(h(i, i).real());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      x.push_back(h(i, j).real());
      x.push_back(h(i, j).imag());
    }
  return x;
}

Matrix from_coordinates(const std::vector<double>& x, std::size_t n) {
  Matrix h(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = x[k++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v(x[k], x[k + 1]);
      k += 2;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  return h;
}

/// Eigenvalues below 1e-300 (round-off negatives included) are lifted before the log.
Matrix hermitian_log(const PsdElement& a) {
  SpectralDecomposition s = a.spectrum();
  for (double& l : s.eigenvalues) l = std::log(std::max(l, 1e-300));
  return s.reconstruct();
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minimizes f over Hermitian H starting at h0.
VariationalProbe descend(const std::function<double(const PsdElement&)>& f, const Matrix& h0,
                         const OptimizerOptions& options) {
  const std::size_t n = h0.dim();
  auto eval = [&](const std::vector<double>& x) {
    try {
      return f(hermitian_exp(from_coordinates(x, n)));
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::vector<double> x = to_coordinates(h0);
  double fx = eval(x);
  auto gradient = [&](const std::vector<double>& at) {
    double scale = 1.0;
    for (double v : at) scale = std::max(scale, std::abs(v));
    const double step = options.fd_step * scale;
    std::vector<double> g(at.size());
    std::vector<double> probe = at;
    for (std::size_t i = 0; i < at.size(); ++i) {
      probe[i] = at[i] + step;
      const double up = eval(probe);
      probe[i] = at[i] - step;
      const double down = eval(probe);
      probe[i] = at[i];
      g[i] = (up - down) / (2.0 * step);
    }
    return g;
  };

  std::vector<double> g = gradient(x);
  double step = 1.0;
  std::vector<double> prev_x;
  std::vector<double> prev_g;
  int iter = 0;
  int stalled = 0;
  bool exhausted = true;
  for (; iter < options.budget; ++iter) {
    const double gnorm2 = dot(g, g);
    if (std::sqrt(gnorm2) <= options.gradient_tolerance * std::max(1.0, std::abs(fx))) {
      exhausted = false;
      break;
    }
    if (!prev_x.empty()) {
      std::vector<double> s(x.size());
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        s[i] = x[i] - prev_x[i];
        y[i] = g[i] - prev_g[i];
      }
      const double sy = dot(s, y);
      if (sy > 0.0) step = dot(s, s) / sy;
    }
    bool accepted = false;
    std::vector<double> candidate(x.size());
    double fc = fx;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t i = 0; i < x.size(); ++i) candidate[i] = x[i] - step * g[i];
      fc = eval(candidate);
      if (std::isfinite(fc) && fc <= fx - 1e-4 * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      exhausted = false;
      break;
    }
    stalled = fx - fc <= 1e-15 * std::max(1.0, std::abs(fx)) ? stalled + 1 : 0;
    if (stalled >= 5) {
      exhausted = false;
      break;
    }
    prev_x = x;
    prev_g = g;
    x = candidate;
    fx = fc;
    g = gradient(x);
  }

  VariationalProbe probe{hermitian_exp(from_coordinates(x, n)), fx, std::sqrt(dot(g, g)), iter, exhausted};
  return probe;
}

Matrix start_point(const StatePair& pair, const DivergenceParams& params, const OptimizerOptions& options) {
  const std::size_t n = pair.dim();
  switch (options.start) {
    case OptimizerOptions::Start::closed_form: {
      const bool faithful = pair.psi().rank() == n && pair.phi().rank() == n;
      const auto a0 = faithful ? closed_form_witness(pair, params)
                               : closed_form_witness(pair, params, default_regularization(pair));
      return hermitian_log(a0);
    }
    case OptimizerOptions::Start::random: {
      std::mt19937_64 rng(options.seed);
      std::normal_distribution<double> normal(0.0, 0.1);
      Matrix h(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = Complex(normal(rng), normal(rng));
      return h.hermitian_part();
    }
    case OptimizerOptions::Start::identity:
      break;
  }
  return Matrix(n, n);
}

}  // namespace

VariationalTerms objective_lower_terms(const PsdElement& a, const StatePair& pair,
                                       const DivergenceParams& params) {
  if (!params.below_one()) throw DomainError("objective_lower requires 0 < alpha < 1");
  if (a.dim() != pair.dim()) throw DimensionError("objective_lower: dimension mismatch");
  require_positive_definite(a);
  const double alpha = params.alpha();
  const double z = params.z();
  const double psi_term = sandwich_trace_power(pair.psi(), alpha / (2.0 * z), mat_pow(a, 0.5).matrix(), z / alpha);
  const double phi_term = sandwich_trace_power(pair.phi(), (1.0 - alpha) / (2.0 * z),
                                               mat_pow(a, -0.5).matrix(), z / (1.0 - alpha));
  return {psi_term, phi_term, alpha * psi_term + (1.0 - alpha) * phi_term};
}

double objective_lower(const PsdElement& a, const StatePair& pair, const DivergenceParams& params) {
  return objective_lower_terms(a, pair, params).value;
}

VariationalTerms objective_upper_terms(const PsdElement& a, const StatePair& pair,
                                       const DivergenceParams& params) {
  if (params.below_one()) throw DomainError("objective_upper requires alpha > 1");
  if (a.dim() != pair.dim()) throw DimensionError("objective_upper: dimension mismatch");
  const double alpha = params.alpha();
  const double z = params.z();
  const Matrix root = mat_pow(a, 0.5).matrix();
  const double psi_term = sandwich_trace_power(pair.psi(), alpha / (2.0 * z), root, z / alpha);
  const double phi_term = sandwich_trace_power(pair.phi(), (alpha - 1.0) / (2.0 * z), root, z / (alpha - 1.0));
  return {psi_term, phi_term, alpha * psi_term - (alpha - 1.0) * phi_term};
}

double objective_upper(const PsdElement& a, const StatePair& pair, const DivergenceParams& params) {
  return objective_upper_terms(a, pair, params).value;
}

double default_regularization(const StatePair& pair) {
  return 1e-8 * (pair.psi_weight() + pair.phi_weight());
}

StatePair regularize(const StatePair& pair, double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("regularization must be >= 0");
  return {PsdElement::from_product(pair.psi().matrix() + pair.phi().matrix() * epsilon),
          PsdElement::from_product(pair.phi().matrix() + pair.psi().matrix() * epsilon)};
}

PsdElement closed_form_witness(const StatePair& pair, const DivergenceParams& params,
                               std::optional<double> regularization) {
  if (regularization) return closed_form_witness(regularize(pair, *regularization), params);
  const std::size_t n = pair.dim();
  if (pair.psi().rank() != n || pair.phi().rank() != n) {
    throw DomainError("closed_form_witness needs faithful states; pass a regularization");
  }
  // Same operator as h_ψ^{−s}(h_ψ^{s} h_φ^{2t} h_ψ^{s})^α h_ψ^{−s} via (CC*)^α = C(C*C)^{α−1}C*
  // with C = h_ψ^{s} h_φ^{t}, written as D D* so no power of h_ψ is inverted.
  const double alpha = params.alpha();
  const double z = params.z();
  const Matrix outer = mat_pow(pair.phi(), (1.0 - alpha) / (2.0 * z)).matrix();
  const Matrix inner = outer * mat_pow(pair.psi(), alpha / z).matrix() * outer;
  const Matrix d = outer * mat_pow(PsdElement::from_product(inner), (alpha - 1.0) / 2.0).matrix();
  return PsdElement::from_product(d * d.adjoint());
}

VariationalProbe minimize_lower(const StatePair& pair, const DivergenceParams& params,
                                const OptimizerOptions& options) {
  if (!params.below_one()) throw DomainError("minimize_lower requires 0 < alpha < 1");
  const auto f = [&](const PsdElement& a) { return objective_lower(a, pair, params); };
  return descend(f, start_point(pair, params, options), options);
}

VariationalProbe maximize_upper(const StatePair& pair, const DivergenceParams& params,
                                const OptimizerOptions& options) {
  if (params.below_one()) throw DomainError("maximize_upper requires alpha > 1");
  const auto f = [&](const PsdElement& a) { return -objective_upper(a, pair, params); };
  VariationalProbe probe = descend(f, start_point(pair, params, options), options);
  probe.objective_value = -probe.objective_value;
  return probe;
}

}  // namespace azr
