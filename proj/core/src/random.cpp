#include "azr/random.hpp"

#include <cmath>

namespace azr {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double standard_normal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::uint64_t h = splitmix(seed);
  for (unsigned char c : name) h = splitmix(h ^ c);
  return splitmix(h ^ splitmix(index));
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

Matrix random_hermitian(Rng& rng, std::size_t n) { return random_gaussian(rng, n, n).hermitian_part(); }

Matrix random_unitary(Rng& rng, std::size_t n) {
  Matrix u = random_gaussian(rng, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, k)) * u(i, j);
      for (std::size_t i = 0; i < n; ++i) u(i, j) -= dot * u(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(u(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) u(i, j) /= norm;
  }
  return u;
}

PsdElement random_state(Rng& rng, std::size_t n, StateShape shape) {
  const std::size_t rank = shape.rank == 0 || shape.rank > n ? n : shape.rank;
  const Matrix g = random_gaussian(rng, rank, n);
  Matrix h = g.adjoint() * g;
  if (shape.normalize) h *= 1.0 / h.trace().real();
  return PsdElement::from_product(h);
}

PsdElement random_state_mixed_rank(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(1, 2 * n);
  const std::size_t r = pick(rng);
  return random_state(rng, n, {r > n ? n : r, true});
}

CommutingPair random_commuting_pair(Rng& rng, std::size_t n, double zero_probability) {
  auto weights = [&] {
    std::vector<double> w(n);
    double total = 0.0;
    for (double& v : w) {
      v = uniform(rng, 0.05, 1.0);
      if (uniform(rng, 0.0, 1.0) < zero_probability) v = 0.0;
      total += v;
    }
    if (total == 0.0) {
      w[0] = 1.0;
      total = 1.0;
    }
    for (double& v : w) v /= total;
    return w;
  };
  std::vector<double> p = weights();
  std::vector<double> q = weights();
  const Matrix u = random_unitary(rng, n);
  const Matrix hp = u * Matrix::diagonal(p) * u.adjoint();
  const Matrix hq = u * Matrix::diagonal(q) * u.adjoint();
  return {StatePair(PsdElement::from_product(hp), PsdElement::from_product(hq)), std::move(p), std::move(q)};
}

PsdElement random_contraction(Rng& rng, std::size_t n) {
  const Matrix u = random_unitary(rng, n);
  std::vector<double> k(n);
  for (double& v : k) v = uniform(rng, 0.0, 1.0);
  return PsdElement::from_product(u * Matrix::diagonal(k) * u.adjoint());
}

}  // namespace azr
