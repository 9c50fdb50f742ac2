#include "azr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "azr/random.hpp"

namespace azr {
namespace {

constexpr int kPositivitySamples = 16;

Matrix unit(std::size_t n, std::size_t k, std::size_t l) {
  Matrix e(n, n);
  e(k, l) = 1.0;
  return e;
}

void require_square(const Matrix& m, std::size_t n, const char* what) {
  if (!m.is_square() || m.rows() != n) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                         ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

LinearMap kraus_to_map(const std::vector<Matrix>& kraus, std::size_t in, std::size_t out) {
  return LinearMap::from_function(in, out, [&](const Matrix& b) {
    Matrix acc(out, out);
    for (const Matrix& k : kraus) acc += k * b * k.adjoint();
    return acc;
  });
}

// s(h) b s(h)
Matrix compress(const Matrix& b, const PsdElement& h) {
  const Matrix s = support_projection(h);
  return s * b * s;
}

}  // namespace

LinearMap::LinearMap(std::size_t in_dim, std::size_t out_dim, Matrix representation)
    : in_(in_dim), out_(out_dim), rep_(std::move(representation)) {
  if (rep_.rows() != out_ * out_ || rep_.cols() != in_ * in_) {
    throw DimensionError("LinearMap: representation must be " + std::to_string(out_ * out_) + "x" +
                         std::to_string(in_ * in_));
  }
}

LinearMap LinearMap::from_function(std::size_t in_dim, std::size_t out_dim,
                                   const std::function<Matrix(const Matrix&)>& f) {
  Matrix rep(out_dim * out_dim, in_dim * in_dim);
  for (std::size_t k = 0; k < in_dim; ++k)
    for (std::size_t l = 0; l < in_dim; ++l) {
      const Matrix image = f(unit(in_dim, k, l));
      require_square(image, out_dim, "LinearMap::from_function");
      for (std::size_t i = 0; i < out_dim; ++i)
        for (std::size_t j = 0; j < out_dim; ++j) rep(i * out_dim + j, k * in_dim + l) = image(i, j);
    }
  return LinearMap(in_dim, out_dim, std::move(rep));
}

Matrix LinearMap::apply(const Matrix& b) const {
  require_square(b, in_, "LinearMap::apply");
  Matrix out(out_, out_);
  const std::size_t cols = in_ * in_;
  for (std::size_t r = 0; r < out_ * out_; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += rep_(r, c) * b.data()[c];
    out.data()[r] = acc;
  }
  return out;
}

Matrix LinearMap::apply_predual(const Matrix& h) const {
  require_square(h, out_, "LinearMap::apply_predual");
  // tr(h γ(b)) = Σ_{ij,kl} h_{ji} L[(i,j),(k,l)] b_{kl}, so predual(h)_{lk} = Σ_{ij} h_{ji} L[(i,j),(k,l)].
  Matrix out(in_, in_);
  for (std::size_t i = 0; i < out_; ++i)
    for (std::size_t j = 0; j < out_; ++j) {
      const Complex hji = h(j, i);
      if (hji == Complex(0.0)) continue;
      const std::size_t r = i * out_ + j;
      for (std::size_t k = 0; k < in_; ++k)
        for (std::size_t l = 0; l < in_; ++l) out(l, k) += hji * rep_(r, k * in_ + l);
    }
  return out;
}

Channel Channel::from_kraus(std::vector<Matrix> kraus, double unitality_tolerance) {
  if (kraus.empty()) throw DimensionError("Channel::from_kraus: empty Kraus family");
  const std::size_t out = kraus.front().rows();
  const std::size_t in = kraus.front().cols();
  for (const Matrix& k : kraus) {
    if (k.rows() != out || k.cols() != in) throw DimensionError("Channel::from_kraus: inconsistent Kraus shapes");
    if (!k.all_finite()) throw DomainError("Channel::from_kraus: non-finite Kraus entry");
  }
  Matrix sum(out, out);
  for (const Matrix& k : kraus) sum += k * k.adjoint();
  const double residual = max_abs_diff(sum, Matrix::identity(out));
  if (residual > unitality_tolerance) {
    throw DomainError("Channel::from_kraus: not unital, residual " + std::to_string(residual));
  }
  LinearMap map = kraus_to_map(kraus, in, out);
  return Channel(std::move(map), std::move(kraus), unitality_tolerance);
}

Channel Channel::from_linear_map(LinearMap map, double unitality_tolerance) {
  if (!map.representation().all_finite()) throw DomainError("Channel::from_linear_map: non-finite entry");
  const std::size_t in = map.in_dim();
  const std::size_t out = map.out_dim();
  const double residual = max_abs_diff(map.apply(Matrix::identity(in)), Matrix::identity(out));
  if (residual > unitality_tolerance) {
    throw DomainError("Channel::from_linear_map: not unital, residual " + std::to_string(residual));
  }
  Rng rng(0x5eed);
  for (int s = 0; s < kPositivitySamples; ++s) {
    const PsdElement b = random_state(rng, in, {s % 2 == 0 ? std::size_t{1} : in, true});
    const Matrix image = map.apply(b.matrix());
    const auto spec = eigh(image);
    if (!is_hermitian(image, unitality_tolerance) || spec.eigenvalues.front() < -unitality_tolerance) {
      throw DomainError("Channel::from_linear_map: map is not positive");
    }
  }
  return Channel(std::move(map), std::nullopt, unitality_tolerance);
}

Matrix Channel::apply_dual(const Matrix& b) const {
  require_square(b, in_dim(), "Channel::apply_dual");
  if (kraus_) {
    Matrix acc(out_dim(), out_dim());
    for (const Matrix& k : *kraus_) acc += k * b * k.adjoint();
    return acc;
  }
  return map_.apply(b);
}

Matrix Channel::apply_predual(const Matrix& h) const {
  require_square(h, out_dim(), "Channel::apply_predual");
  if (kraus_) {
    Matrix acc(in_dim(), in_dim());
    for (const Matrix& k : *kraus_) acc += k.adjoint() * h * k;
    return acc;
  }
  return map_.apply_predual(h);
}

PsdElement Channel::apply_predual(const PsdElement& h) const {
  return PsdElement::from_product(apply_predual(h.matrix()));
}

double unitality_residual(const Channel& ch) {
  return max_abs_diff(ch.apply_dual(Matrix::identity(ch.in_dim())), Matrix::identity(ch.out_dim()));
}

Channel random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, std::uint64_t seed) {
  if (in_dim == 0 || out_dim == 0 || kraus_count == 0 || kraus_count * in_dim < out_dim) {
    throw DomainError("random_channel: kraus_count * in_dim must be at least out_dim");
  }
  Rng rng(seed);
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_count);
  Matrix sum(out_dim, out_dim);
  for (std::size_t i = 0; i < kraus_count; ++i) {
    kraus.push_back(random_gaussian(rng, out_dim, in_dim));
    sum += kraus.back() * kraus.back().adjoint();
  }
  const Matrix norm = mat_pow(PsdElement::from_product(sum), -0.5).matrix();
  for (Matrix& k : kraus) k = norm * k;
  return Channel::from_kraus(std::move(kraus));
}

Channel identity_channel(std::size_t n) { return Channel::from_kraus({Matrix::identity(n)}); }

Channel pinching_channel(std::size_t n) {
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < n; ++i) kraus.push_back(unit(n, i, i));
  return Channel::from_kraus(std::move(kraus));
}

Channel depolarizing_channel(std::size_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing_channel: p must lie in [0, 1]");
  std::vector<Matrix> kraus;
  if (p < 1.0) kraus.push_back(Matrix::identity(n) * std::sqrt(1.0 - p));
  if (p > 0.0) {
    const double w = std::sqrt(p / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) kraus.push_back(unit(n, i, j) * w);
  }
  return Channel::from_kraus(std::move(kraus));
}

Channel partial_trace_channel(std::size_t n, std::size_t k) {
  std::vector<Matrix> kraus;
  for (std::size_t j = 0; j < k; ++j) {
    Matrix e(k, 1);
    e(j, 0) = 1.0;
    kraus.push_back(kron(Matrix::identity(n), e));
  }
  return Channel::from_kraus(std::move(kraus));
}

Channel doubling_channel(std::size_t n) {
  Matrix top(2 * n, n);
  Matrix bottom(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    top(i, i) = 1.0;
    bottom(n + i, i) = 1.0;
  }
  return Channel::from_kraus({top, bottom});
}

Channel transpose_map(std::size_t n) {
  return Channel::from_linear_map(LinearMap::from_function(n, n, [](const Matrix& b) { return b.transpose(); }));
}

RecoveryMap petz_recovery(const LinearMap& gamma, const PsdElement& phi) {
  if (phi.dim() != gamma.out_dim()) throw DimensionError("petz_recovery: phi lives on the output algebra");
  if (phi.is_zero()) throw DomainError("petz_recovery: phi must be nonzero");
  PsdElement phi_gamma = PsdElement::from_product(gamma.apply_predual(phi.matrix()));
  const Matrix g_inv = mat_pow(phi_gamma, -0.5).matrix();
  const Matrix root = mat_pow(phi, 0.5).matrix();
  LinearMap map = LinearMap::from_function(gamma.out_dim(), gamma.in_dim(), [&](const Matrix& a) {
    return g_inv * gamma.apply_predual(root * a * root) * g_inv;
  });
  Matrix dom = support_projection(phi);
  Matrix range = support_projection(phi_gamma);
  return {std::move(map), phi, std::move(phi_gamma), std::move(dom), std::move(range)};
}

RecoveryMap petz_recovery(const Channel& ch, const PsdElement& phi) { return petz_recovery(ch.linear_map(), phi); }

double recovery_identity_residual(const Channel& ch, const RecoveryMap& r, const Matrix& a) {
  const Matrix g = mat_pow(r.phi_gamma, 0.5).matrix();
  const Matrix root = mat_pow(r.phi, 0.5).matrix();
  const Matrix a_s = r.domain_support * a * r.domain_support;
  return max_abs_diff(g * r.apply(a_s) * g, ch.apply_predual(root * a_s * root));
}

InequalityCheck check_sandwich_contraction(const Channel& ch, const PsdElement& phi, const Matrix& b, double p) {
  if (!(p >= 1.0)) throw DomainError("check_sandwich_contraction requires p >= 1");
  if (phi.dim() != ch.out_dim()) throw DimensionError("check_sandwich_contraction: phi lives on the output algebra");
  const PsdElement phi_gamma = ch.apply_predual(phi);
  const Matrix bs = compress(b, phi_gamma);
  const double e = 1.0 / (2.0 * p);
  const Matrix left = mat_pow(phi, e).matrix();
  const Matrix right = mat_pow(phi_gamma, e).matrix();
  const double lhs = schatten_norm(left * ch.apply_dual(bs) * left, p);
  const double rhs = schatten_norm(right * bs * right, p);
  return {lhs, rhs, lhs <= rhs + 1e-9 * rhs};
}

InequalityCheck check_carlen_zhang(const Channel& ch, const PsdElement& a, const Matrix& b, double p) {
  if (!ch.completely_positive()) throw DomainError("check_carlen_zhang requires a Kraus-form channel");
  if (!(p >= 1.0)) throw DomainError("check_carlen_zhang requires p >= 1");
  if (a.dim() != ch.out_dim()) throw DimensionError("check_carlen_zhang: A lives on the output algebra");
  if (!(a.min_eigenvalue() > 0.0)) throw DomainError("check_carlen_zhang: A must be positive invertible");
  const PsdElement pulled = ch.apply_predual(a);
  const Matrix bs = support_projection(pulled) * b;
  const double lhs = sandwich_trace_power(a, 1.0 / (2.0 * p), ch.apply_dual(bs), p);
  const double rhs = sandwich_trace_power(pulled, 1.0 / (2.0 * p), bs, p);
  return {lhs, rhs, lhs <= rhs + 1e-9 * rhs};
}

double choi_gap(const Channel& ch, const PsdElement& b) {
  if (!(b.min_eigenvalue() > 0.0)) throw DomainError("choi_gap: b must be positive invertible");
  const Matrix lhs = ch.apply_dual(pseudo_inverse(b));
  const Matrix rhs = pseudo_inverse(PsdElement::from_product(ch.apply_dual(b.matrix())));
  const auto spec = eigh(lhs - rhs);
  return spec.eigenvalues.front();
}

}  // namespace azr
