#include <doctest.h>

#include <cmath>

#include "azr/random.hpp"
#include "azr/variational.hpp"
#include "support/check.hpp"

using namespace azr;
using azr_test::close;
using azr_test::rel_diff;

TEST_CASE("objectives at the identity") {
  Rng rng(1);
  const PsdElement h = random_state(rng, 3);
  const PsdElement k = random_state(rng, 3);
  const auto id = PsdElement::identity(3);
  CHECK(rel_diff(objective_lower(id, StatePair(h, h), DivergenceParams(0.4, 1.2)), h.trace()) < 1e-12);
  CHECK(rel_diff(objective_upper(id, StatePair(h, h), DivergenceParams(2.0, 1.2)), h.trace()) < 1e-12);
  // Traces only: α tr h_ψ + (1 − α) tr h_φ.
  CHECK(rel_diff(objective_lower(id, StatePair(h.scaled(2.0), k), DivergenceParams(0.3, 0.7)),
                 0.3 * 2.0 + 0.7 * 1.0) < 1e-12);
  CHECK(objective_upper(PsdElement::zero(3), StatePair(h, k), DivergenceParams(2.0, 1.0)) == 0.0);
}

TEST_CASE("objective domain errors") {
  Rng rng(2);
  const StatePair pair(random_state(rng, 2), random_state(rng, 2));
  CHECK_THROWS_AS(objective_lower(PsdElement(Matrix::diagonal({1.0, 0.0})), pair, DivergenceParams(0.5, 1.0)),
                  DomainError);
  CHECK_THROWS_AS(objective_lower(PsdElement::identity(2), pair, DivergenceParams(2.0, 1.0)), DomainError);
  CHECK_THROWS_AS(objective_upper(PsdElement::identity(2), pair, DivergenceParams(0.5, 1.0)), DomainError);
}

TEST_CASE("random probes respect the variational bounds") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const StatePair pair(random_state(rng, n), random_state_mixed_rank(rng, n));
    const PsdElement a = hermitian_exp(random_hermitian(rng, n));
    const DivergenceParams lower(uniform(rng, 0.1, 0.9), uniform(rng, 0.3, 3.0));
    const double q_lower = q_alpha_z(pair, lower).value();
    CHECK(objective_lower(a, pair, lower) >= q_lower - 1e-9 * std::max(1.0, q_lower));

    const DivergenceParams upper(uniform(rng, 1.1, 3.0), uniform(rng, 0.3, 3.0));
    const auto q_upper = q_alpha_z(pair, upper);
    const double v = objective_upper(a, pair, upper);
    if (q_upper.is_finite()) CHECK(v <= q_upper.value() + 1e-9 * std::max(1.0, q_upper.value()));
  }
}

TEST_CASE("closed-form witness") {
  Rng rng(4);
  const PsdElement h = random_state(rng, 3);
  CHECK(close(closed_form_witness(StatePair(h, h), DivergenceParams(0.5, 1.0)).matrix(), Matrix::identity(3), 1e-9));

  const StatePair diag(PsdElement(Matrix::diagonal({0.6, 0.3, 0.1})), PsdElement(Matrix::diagonal({0.2, 0.5, 0.3})));
  const DivergenceParams params(0.4, 0.9);
  const PsdElement a0 = closed_form_witness(diag, params);
  CHECK(std::abs(a0.matrix()(0, 1)) < 1e-14);
  const double classical = std::pow(0.6, 0.4) * std::pow(0.2, 0.6) + std::pow(0.3, 0.4) * std::pow(0.5, 0.6) +
                           std::pow(0.1, 0.4) * std::pow(0.3, 0.6);
  CHECK(rel_diff(objective_lower(a0, diag, params), classical) < 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    const StatePair pair(random_state(rng, 4), random_state(rng, 4));
    const DivergenceParams p(0.3, 1.0);
    const double q = q_alpha_z(pair, p).value();
    CHECK(rel_diff(objective_lower(closed_form_witness(pair, p), pair, p), q) < 1e-7);
  }

  const StatePair singular(PsdElement(Matrix::diagonal({1.0, 0.0})), PsdElement::identity(2));
  CHECK_THROWS_AS(closed_form_witness(singular, params), DomainError);
  CHECK_NOTHROW(closed_form_witness(singular, params, default_regularization(singular)));
}

TEST_CASE("numerical minimization approaches Q from above") {
  Rng rng(5);
  const PsdElement h = random_state(rng, 2);
  const auto same = minimize_lower(StatePair(h, h), DivergenceParams(0.5, 1.0));
  CHECK(std::abs(same.objective_value - h.trace()) < 1e-6);

  const StatePair pair(random_state(rng, 3), random_state(rng, 3));
  const DivergenceParams params(0.5, 1.0);
  const double q = q_alpha_z(pair, params).value();
  const auto probe = minimize_lower(pair, params);
  CHECK(probe.objective_value >= q - 1e-6 * q);
  CHECK(probe.objective_value - q < 1e-5 * q);
}

TEST_CASE("numerical maximization for the sandwiched case") {
  Rng rng(6);
  const StatePair pair(random_state(rng, 3), random_state(rng, 3));
  const DivergenceParams params(2.0, 2.0);
  const double q = q_alpha_z(pair, params).value();
  const auto probe = maximize_upper(pair, params);
  CHECK(probe.objective_value <= q + 1e-6 * q);
  CHECK(q - probe.objective_value < 1e-4 * q);
}

TEST_CASE("optimizer is deterministic") {
  Rng rng(7);
  const StatePair pair(random_state(rng, 2), random_state(rng, 2));
  OptimizerOptions opts;
  opts.start = OptimizerOptions::Start::random;
  opts.seed = 99;
  opts.budget = 30;
  const auto a = minimize_lower(pair, DivergenceParams(0.6, 0.8), opts);
  const auto b = minimize_lower(pair, DivergenceParams(0.6, 0.8), opts);
  CHECK(a.objective_value == b.objective_value);
  CHECK(a.a.matrix() == b.a.matrix());
}
