#include <doctest.h>

#include <cmath>

#include "azr/divergence.hpp"
#include "azr/random.hpp"
#include "support/check.hpp"

using namespace azr;
using azr_test::close;
using azr_test::rel_diff;

namespace {

double diagonal_oracle(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      if (alpha > 1.0) return INFINITY;
      continue;
    }
    s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  return s;
}

StatePair diag_pair(std::vector<double> p, std::vector<double> q) {
  return {PsdElement(Matrix::diagonal(p)), PsdElement(Matrix::diagonal(q))};
}

}  // namespace

TEST_CASE("DivergenceParams validation") {
  CHECK_NOTHROW(DivergenceParams(0.5, 1.0));
  CHECK_THROWS_AS(DivergenceParams(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(DivergenceParams(1.0 + 1e-10, 1.0), DomainError);
  CHECK_THROWS_AS(DivergenceParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(DivergenceParams(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(DivergenceParams(INFINITY, 1.0), DomainError);
  CHECK_THROWS_AS(DivergenceParams(0.5, NAN), DomainError);
}

TEST_CASE("StatePair rejects mismatched dimensions") {
  CHECK_THROWS_AS(StatePair(PsdElement::identity(2), PsdElement::identity(3)), DimensionError);
}

TEST_CASE("Q of a state against itself is its weight") {
  Rng rng(1);
  for (double alpha : {0.3, 0.7, 1.5, 3.0})
    for (double z : {0.5, 1.0, 2.5}) {
      const PsdElement h = random_state(rng, 4, {alpha > 1.0 ? std::size_t{0} : std::size_t{2}, false});
      const StatePair pair(h, h);
      CHECK(rel_diff(q_alpha_z(pair, DivergenceParams(alpha, z)).value(), h.trace()) < 1e-10);
      CHECK(std::abs(d_alpha_z(pair, DivergenceParams(alpha, z))) < 1e-10);
    }
}

TEST_CASE("support violation gives infinity for alpha > 1") {
  const StatePair pair = diag_pair({0.5, 0.5}, {1.0, 0.0});
  CHECK(q_alpha_z(pair, DivergenceParams(2.0, 1.0)).is_infinite());
  CHECK(d_alpha_z(pair, DivergenceParams(2.0, 1.0)) == INFINITY);
  CHECK(!solve_identity_x(pair, DivergenceParams(2.0, 1.0)));
  CHECK(!solve_identity_y(pair, DivergenceParams(2.0, 1.0)));
  CHECK(petz_q(pair, 2.0).is_infinite());
  CHECK(sandwiched_q(pair, 2.0).is_infinite());
}

TEST_CASE("diagonal example") {
  const StatePair pair = diag_pair({0.7, 0.3}, {0.5, 0.5});
  const double expected = std::sqrt(0.35) + std::sqrt(0.15);
  CHECK(expected == doctest::Approx(0.978906).epsilon(1e-6));
  CHECK(rel_diff(q_alpha_z(pair, DivergenceParams(0.5, 2.0)).value(), expected) < 1e-14);
  CHECK(rel_diff(petz_q(pair, 0.5).value(), expected) < 1e-14);
}

TEST_CASE("commuting pairs follow the classical formula for every z") {
  Rng rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto c = random_commuting_pair(rng, n, 0.2);
    for (double alpha : {0.3, 0.5, 0.7, 1.5, 2.0, 3.0})
      for (double z : {0.5, 1.0, alpha, 2.0}) {
        const double expected = diagonal_oracle(c.p, c.q, alpha);
        const auto q = q_alpha_z(c.pair, DivergenceParams(alpha, z));
        if (std::isinf(expected)) {
          CHECK(q.is_infinite());
        } else {
          REQUIRE(q.is_finite());
          CAPTURE(q.value());
          CAPTURE(expected);
          CHECK(rel_diff(q.value(), expected) < 1e-9);
        }
      }
  }
}

TEST_CASE("Q of the zero functional is zero and D rejects it") {
  const StatePair pair(PsdElement::zero(3), PsdElement::identity(3));
  CHECK(q_alpha_z(pair, DivergenceParams(0.5, 1.0)).value() == 0.0);
  CHECK(q_alpha_z(pair, DivergenceParams(2.0, 1.0)).value() == 0.0);
  CHECK_THROWS_AS(d_alpha_z(pair, DivergenceParams(0.5, 1.0)), DomainError);
}

TEST_CASE("orthogonal supports give Q = 0 and D = +inf below one") {
  const StatePair pair = diag_pair({1.0, 0.0}, {0.0, 1.0});
  CHECK(q_alpha_z(pair, DivergenceParams(0.5, 1.0)).value() == 0.0);
  CHECK(d_alpha_z(pair, DivergenceParams(0.5, 1.0)) == INFINITY);
}

TEST_CASE("scaling of D") {
  Rng rng(3);
  const StatePair pair(random_state(rng, 3), random_state(rng, 3));
  for (double alpha : {0.4, 2.0}) {
    const DivergenceParams params(alpha, 1.3);
    const double d = d_alpha_z(pair, params);
    const double ds = d_alpha_z(pair.scaled(2.0, 3.0), params);
    CHECK(std::abs(ds - (d + std::log(2.0) - std::log(3.0))) < 1e-10);
  }
}

TEST_CASE("identity witnesses") {
  Rng rng(4);
  const PsdElement h = random_state(rng, 3);
  const DivergenceParams params(2.0, 1.5);
  const auto x = solve_identity_x(StatePair(h, h), params);
  REQUIRE(x);
  CHECK(close(x->matrix, mat_pow(h, 1.0 / 1.5).matrix(), 1e-10));
  const auto y = solve_identity_y(StatePair(h, h), params);
  REQUIRE(y);
  CHECK(close(y->matrix, mat_pow(h, 1.0 / 3.0).matrix(), 1e-10));

  for (int trial = 0; trial < 30; ++trial) {
    const PsdElement phi = random_state(rng, 4, {trial % 2 == 0 ? std::size_t{0} : std::size_t{3}, true});
    // ψ supported inside s(φ)
    const Matrix s = mat_pow(phi, 0.25).matrix();
    const PsdElement psi = PsdElement::from_product(s * random_state(rng, 4).matrix() * s);
    const StatePair pair(psi, phi);
    const DivergenceParams p(uniform(rng, 1.1, 3.0), uniform(rng, 0.5, 3.0));
    const auto wx = solve_identity_x(pair, p);
    const auto wy = solve_identity_y(pair, p);
    REQUIRE(wx);
    REQUIRE(wy);
    CHECK(wx->residual < 1e-9);
    CHECK(rel_diff(wx->norm_power, wy->norm_power) < 1e-8);
    const Matrix sp = support_projection(phi);
    CHECK(close(sp * wx->matrix * sp, wx->matrix, 1e-9 * std::max(1.0, wx->matrix.max_abs())));
    CHECK(close(wy->matrix * sp, wy->matrix, 1e-9 * std::max(1.0, wy->matrix.max_abs())));
  }
}

TEST_CASE("Petz and sandwiched specializations agree with Q") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const PsdElement phi = random_state_mixed_rank(rng, n);
    const PsdElement psi = random_state_mixed_rank(rng, n);
    const StatePair pair(psi, phi);
    for (double alpha : {0.4, 0.8, 1.7, 2.5}) {
      const auto a = petz_q(pair, alpha);
      const auto b = q_alpha_z(pair, DivergenceParams(alpha, 1.0));
      const auto c = sandwiched_q(pair, alpha);
      const auto d = q_alpha_z(pair, DivergenceParams(alpha, alpha));
      CHECK(a.is_finite() == b.is_finite());
      CHECK(c.is_finite() == d.is_finite());
      if (a.is_finite() && b.is_finite()) CHECK(std::abs(a.value() - b.value()) <= 1e-9 * std::max(1.0, b.value()));
      if (c.is_finite() && d.is_finite()) CHECK(std::abs(c.value() - d.value()) <= 1e-9 * std::max(1.0, d.value()));
    }
  }
}

TEST_CASE("direct sums add and tensor products multiply") {
  Rng rng(6);
  const StatePair a(random_state(rng, 2), random_state(rng, 2));
  const StatePair b(random_state(rng, 3), random_state(rng, 3));
  const DivergenceParams params(0.6, 1.0);
  const double qa = q_alpha_z(a, params).value();
  const double qb = q_alpha_z(b, params).value();
  CHECK(rel_diff(q_alpha_z(direct_sum(a, b), params).value(), qa + qb) < 1e-9);
  CHECK(rel_diff(q_alpha_z(tensor(a, b), params).value(), qa * qb) < 1e-9);

  const StatePair zero(PsdElement::zero(2), random_state(rng, 2));
  CHECK(rel_diff(q_alpha_z(direct_sum(a, zero), params).value(), qa) < 1e-12);
  const StatePair one(PsdElement::identity(1), PsdElement::identity(1));
  CHECK(rel_diff(q_alpha_z(tensor(a, one), params).value(), qa) < 1e-12);
}

TEST_CASE("scaling of Q for alpha > 1 with a scaled copy") {
  Rng rng(7);
  const PsdElement phi = random_state(rng, 3);
  const StatePair pair(phi.scaled(2.0), phi);
  // Q(2φ‖φ) = 2^α Q(φ‖φ) = 2^α φ(1)
  CHECK(rel_diff(sandwiched_q(pair, 2.0).value(), 4.0 * phi.trace()) < 1e-10);
}
