#include "azr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace azr {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

// Jacobi rotation parameters for the 2×2 Hermitian block [[app, g·e],[g·ē, aqq]],
// g = |apq| > 0. After the rotation J = diag(1, ē)·R the block is diagonal.
struct Rotation {
  double c;
  double s;
  double t;
  Complex phase;  // e = apq / |apq|
};

Rotation make_rotation(double app, double aqq, Complex apq) {
  const double g = std::abs(apq);
  const double theta = (aqq - app) / (2.0 * g);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, t, apq / g};
}

void check_finite(const Matrix& m, const char* what) {
  if (!m.all_finite()) throw DomainError(std::string(what) + ": matrix has NaN or Inf entries");
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eigenvalues[k];
    if (lam == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex uik = eigenvectors(i, k) * lam;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += uik * std::conj(eigenvectors(j, k));
    }
  }
  return out;
}

SpectralDecomposition eigh(const Matrix& h) {
  const std::size_t n = h.dim();
  check_finite(h, "eigh");
  Matrix a = h.hermitian_part();
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= std::numeric_limits<double>::min()) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (g <= kEps * 0.5 * std::sqrt(std::abs(app) * std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const Rotation r = make_rotation(app, aqq, apq);
        const Complex jqp = -r.s * std::conj(r.phase);
        const Complex jqq = r.c * std::conj(r.phase);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          const Complex nkp = akp * r.c + akq * jqp;
          const Complex nkq = akp * r.s + akq * jqq;
          a(k, p) = nkp;
          a(p, k) = std::conj(nkp);
          a(k, q) = nkq;
          a(q, k) = std::conj(nkq);
        }
        a(p, p) = app - r.t * g;
        a(q, q) = aqq + r.t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * r.c + vkq * jqp;
          v(k, q) = vkp * r.s + vkq * jqq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> singular_values(const Matrix& input) {
  check_finite(input, "singular_values");
  // Orthogonalize columns; a wide matrix is handled through its adjoint.
  Matrix a = input.rows() >= input.cols() ? input : input.adjoint();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  auto column_dot = [&](std::size_t i, std::size_t j) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::conj(a(k, i)) * a(k, j);
    return s;
  };

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double app = column_dot(p, p).real();
        const double aqq = column_dot(q, q).real();
        const Complex apq = column_dot(p, q);
        const double g = std::abs(apq);
        if (g <= std::numeric_limits<double>::min() || g <= kEps * std::sqrt(app * aqq)) continue;
        rotated = true;
        const Rotation r = make_rotation(app, aqq, apq);
        const Complex jqp = -r.s * std::conj(r.phase);
        const Complex jqq = r.c * std::conj(r.phase);
        for (std::size_t k = 0; k < m; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * r.c + akq * jqp;
          a(k, q) = akp * r.s + akq * jqq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(a(k, j));
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

PsdElement::PsdElement(const Matrix& m, double psd_tolerance) : tolerance_(psd_tolerance) {
  if (!(psd_tolerance >= 0.0)) throw DomainError("psd_tolerance must be nonnegative");
  const std::size_t n = m.dim();
  check_finite(m, "PsdElement");
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > psd_tolerance) {
        throw DomainError("PsdElement: matrix is not Hermitian within tolerance");
      }
    }
  }
  spectrum_ = eigh(m);
  matrix_ = m.hermitian_part();
  if (n > 0) {
    const double lmin = spectrum_.eigenvalues.front();
    const double lmax = spectrum_.eigenvalues.back();
    if (lmin < -psd_tolerance * (1.0 + std::max(lmax, 0.0))) {
      throw DomainError("PsdElement: minimum eigenvalue " + std::to_string(lmin) + " is negative");
    }
  }
}

PsdElement PsdElement::from_product(const Matrix& m) {
  Matrix h = m.hermitian_part();
  SpectralDecomposition s = eigh(h);
  return PsdElement(std::move(h), std::move(s), kDefaultTolerance);
}

PsdElement PsdElement::from_spectrum(SpectralDecomposition spectrum) {
  for (double lam : spectrum.eigenvalues) {
    if (!(lam >= 0.0)) throw DomainError("PsdElement::from_spectrum: negative or NaN eigenvalue");
  }
  Matrix m = spectrum.reconstruct();
  return PsdElement(std::move(m), std::move(spectrum), kDefaultTolerance);
}

PsdElement PsdElement::zero(std::size_t n) {
  SpectralDecomposition s{std::vector<double>(n, 0.0), Matrix::identity(n)};
  return PsdElement(Matrix(n, n), std::move(s), kDefaultTolerance);
}

PsdElement PsdElement::identity(std::size_t n) {
  SpectralDecomposition s{std::vector<double>(n, 1.0), Matrix::identity(n)};
  return PsdElement(Matrix::identity(n), std::move(s), kDefaultTolerance);
}

double PsdElement::trace() const { return matrix_.dim() == 0 ? 0.0 : matrix_.trace().real(); }

double PsdElement::max_eigenvalue() const {
  return spectrum_.eigenvalues.empty() ? 0.0 : spectrum_.eigenvalues.back();
}

double PsdElement::min_eigenvalue() const {
  return spectrum_.eigenvalues.empty() ? 0.0 : spectrum_.eigenvalues.front();
}

double PsdElement::support_cutoff(const CutoffPolicy& policy) const {
  return policy.threshold(dim(), max_eigenvalue());
}

std::size_t PsdElement::rank(const CutoffPolicy& policy) const {
  const double cut = support_cutoff(policy);
  return static_cast<std::size_t>(std::count_if(spectrum_.eigenvalues.begin(),
                                                spectrum_.eigenvalues.end(),
                                                [&](double l) { return l > cut; }));
}

PsdElement PsdElement::scaled(double s) const {
  if (!(s >= 0.0)) throw DomainError("PsdElement::scaled requires s >= 0");
  SpectralDecomposition sp = spectrum_;
  for (double& l : sp.eigenvalues) l = std::max(l, 0.0) * s;
  return PsdElement(matrix_ * s, std::move(sp), tolerance_);
}

PsdElement operator+(const PsdElement& a, const PsdElement& b) {
  return PsdElement::from_product(a.matrix() + b.matrix());
}

PsdElement mat_pow(const PsdElement& a, double t) {
  const double cut = a.support_cutoff();
  const auto& src = a.spectrum();
  const std::size_t n = src.eigenvalues.size();
  std::vector<std::pair<double, std::size_t>> mapped(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = src.eigenvalues[k];
    double v = 0.0;
    if (lam > cut) v = t == 0.0 ? 1.0 : (t == 1.0 ? lam : std::pow(lam, t));
    mapped[k] = {v, k};
  }
  std::stable_sort(mapped.begin(), mapped.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = mapped[k].first;
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = src.eigenvectors(i, mapped[k].second);
  }
  return PsdElement::from_spectrum(std::move(out));
}

double trace_pow(const PsdElement& a, double t) {
  const double cut = a.support_cutoff();
  double s = 0.0;
  for (double lam : a.spectrum().eigenvalues)
    if (lam > cut) s += t == 1.0 ? lam : std::pow(lam, t);
  return s;
}

Matrix support_projection(const PsdElement& a, const CutoffPolicy& policy) {
  const auto basis = support_basis(a, policy);
  return basis.basis * basis.basis.adjoint();
}

SupportBasis support_basis(const PsdElement& a, const CutoffPolicy& policy) {
  const double cut = a.support_cutoff(policy);
  const auto& sp = a.spectrum();
  const std::size_t n = sp.eigenvalues.size();
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k)
    if (sp.eigenvalues[k] > cut) keep.push_back(k);
  SupportBasis out{Matrix(n, keep.size()), {}};
  out.values.reserve(keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.values.push_back(sp.eigenvalues[keep[j]]);
    for (std::size_t i = 0; i < n; ++i) out.basis(i, j) = sp.eigenvectors(i, keep[j]);
  }
  return out;
}

Matrix pseudo_inverse(const PsdElement& a) { return mat_pow(a, -1.0).matrix(); }

double schatten_power_sum(std::span<const double> singular, double p, double floor) {
  if (!(p > 0.0)) throw DomainError("Schatten exponent must be > 0");
  if (singular.empty()) return 0.0;
  const double smax = *std::max_element(singular.begin(), singular.end());
  const double cut = std::max(static_cast<double>(singular.size()) * kEps * smax, floor);
  double s = 0.0;
  for (double sigma : singular)
    if (sigma > cut) s += std::pow(sigma, p);
  return s;
}

double schatten_power_sum(const Matrix& a, double p, double floor) {
  if (!(p > 0.0) || std::isinf(p)) throw DomainError("Schatten exponent must be finite and > 0");
  const auto sv = singular_values(a);
  return schatten_power_sum(sv, p, floor);
}

double schatten_norm(const Matrix& a, double p) {
  if (!(p > 0.0)) throw DomainError("Schatten exponent must be > 0, got " + std::to_string(p));
  const auto sv = singular_values(a);
  if (sv.empty()) return 0.0;
  if (std::isinf(p)) return sv.front();
  const double s = schatten_power_sum(sv, p);
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
}

PolarDecomposition polar_decompose(const Matrix& a) {
  a.dim();
  PsdElement abs = mat_pow(PsdElement::from_product(a.adjoint() * a), 0.5);
  Matrix u = a * pseudo_inverse(abs);
  return {std::move(u), std::move(abs)};
}

Matrix contraction_factor(const PsdElement& a, const PsdElement& b, double tolerance) {
  if (a.dim() != b.dim()) throw DimensionError("contraction_factor: dimension mismatch");
  const auto diff = eigh(b.matrix() - a.matrix());
  const double lmin = diff.eigenvalues.empty() ? 0.0 : diff.eigenvalues.front();
  const double scale = std::max(1.0, b.max_eigenvalue());
  if (lmin < -tolerance * scale) {
    throw PreconditionError("contraction_factor: A <= B fails, min eig(B - A) = " + std::to_string(lmin),
                            lmin);
  }
  return mat_pow(a, 0.5).matrix() * mat_pow(b, -0.5).matrix();
}

Matrix kosaki_embed(const Matrix& a, const PsdElement& h, double p) {
  if (!(p >= 1.0)) throw DomainError("kosaki_embed requires p >= 1");
  if (a.dim() != h.dim()) throw DimensionError("kosaki_embed: dimension mismatch");
  // 1/2q = (1 - 1/p)/2
  const double exponent = std::isinf(p) ? 0.5 : 0.5 * (1.0 - 1.0 / p);
  const Matrix s = mat_pow(h, exponent).matrix();
  return s * a * s;
}

double holder_gap(const PsdElement& x, const PsdElement& y, double p, double q, double r) {
  const double nx = std::pow(trace_pow(x, p), 1.0 / p);
  const double ny = std::pow(trace_pow(y, q), 1.0 / q);
  const double nxy = schatten_norm(x.matrix() * y.matrix(), r);
  return nx * ny - nxy;
}

HolderResult holder_equality_check(const PsdElement& x, const PsdElement& y, double p, double q,
                                   double r, const HolderOptions& options) {
  if (x.dim() != y.dim()) throw DimensionError("holder_equality_check: dimension mismatch");
  if (!(p > 0.0 && q > 0.0 && r > 0.0) || std::isinf(p) || std::isinf(q) || std::isinf(r)) {
    throw DomainError("holder_equality_check: exponents must be finite and positive");
  }
  if (std::abs(1.0 / r - 1.0 / p - 1.0 / q) > options.exponent_tolerance) {
    throw DomainError("holder_equality_check: 1/r != 1/p + 1/q");
  }
  if (x.is_zero() || y.is_zero()) return HolderZero{};

  const double nx = std::pow(trace_pow(x, p), 1.0 / p);
  const double ny = std::pow(trace_pow(y, q), 1.0 / q);
  const double gap = nx * ny - schatten_norm(x.matrix() * y.matrix(), r);
  if (gap > options.eq_tolerance * nx * ny) return HolderStrict{gap};

  // Least-squares scalar in both orientations; forward wins unless clearly worse.
  const Matrix xp = mat_pow(x, p).matrix();
  const Matrix yq = mat_pow(y, q).matrix();
  const double xy = trace_product(yq, xp).real();
  const double yy = trace_product(yq, yq).real();
  const double xx = trace_product(xp, xp).real();
  const double lambda = xy / yy;
  const double mu = xy / xx;
  const double res_forward = (xp - yq * lambda).frobenius_norm() / std::sqrt(xx);
  const double res_backward = (yq - xp * mu).frobenius_norm() / std::sqrt(yy);
  if (res_forward <= std::max(res_backward, options.eq_tolerance)) return HolderProportional{lambda, true};
  return HolderProportional{mu, false};
}

double sandwich_trace_power(const PsdElement& h, double exponent, const Matrix& m, double power) {
  if (m.rows() != h.dim()) throw DimensionError("sandwich_trace_power: dimension mismatch");
  const SupportBasis sb = support_basis(h);
  if (sb.values.empty()) return 0.0;
  Matrix f = sb.basis.adjoint() * m;
  double largest = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    const double s = std::pow(sb.values[i], exponent);
    largest = std::max(largest, s);
    for (std::size_t j = 0; j < f.cols(); ++j) f(i, j) *= s;
  }
  const double floor = static_cast<double>(f.rows() + f.cols()) * kEps * largest * m.frobenius_norm();
  return schatten_power_sum(f, 2.0 * power, floor);
}

PsdElement hermitian_exp(const Matrix& h) {
  SpectralDecomposition s = eigh(h);
  for (double& l : s.eigenvalues) l = std::exp(l);
  return PsdElement::from_spectrum(std::move(s));
}

}  // namespace azr
