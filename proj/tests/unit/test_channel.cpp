#include <doctest.h>

#include <cmath>

#include "azr/channel.hpp"
#include "azr/random.hpp"
#include "support/check.hpp"

using namespace azr;
using azr_test::close;
using azr_test::rel_diff;

TEST_CASE("construction checks") {
  CHECK_THROWS_AS(Channel::from_kraus({Matrix::identity(2) * 0.5}), DomainError);
  CHECK_THROWS_AS(Channel::from_kraus({Matrix::identity(2), Matrix::identity(3)}), DimensionError);
  CHECK_THROWS_AS(random_channel(2, 5, 2, 1), DomainError);
  // b ↦ 1.5 tr(b) I − 2b is unital on M_2 but sends pure states to indefinite matrices
  const auto neg = LinearMap::from_function(2, 2, [](const Matrix& b) { return Matrix::identity(2) * b.trace() * 1.5 - b * 2.0; });
  CHECK_THROWS_AS(Channel::from_linear_map(neg), DomainError);
}

TEST_CASE("dual action of standard channels") {
  Rng rng(1);
  const Matrix b = random_gaussian(rng, 3, 3);
  CHECK(close(identity_channel(3).apply_dual(b), b, 1e-15));
  Matrix diag(3, 3);
  for (std::size_t i = 0; i < 3; ++i) diag(i, i) = b(i, i);
  CHECK(close(pinching_channel(3).apply_dual(b), diag, 1e-15));
  for (const Channel& ch : {identity_channel(3), pinching_channel(3), depolarizing_channel(3, 0.3),
                            random_channel(3, 4, 2, 7), transpose_map(3)}) {
    CHECK(close(ch.apply_dual(Matrix::identity(3)), Matrix::identity(ch.out_dim()), 1e-12));
  }
  CHECK(close(doubling_channel(2).apply_dual(Matrix{{1.0, 2.0}, {3.0, 4.0}}),
              direct_sum(Matrix{{1.0, 2.0}, {3.0, 4.0}}, Matrix{{1.0, 2.0}, {3.0, 4.0}}), 0.0));
  const Matrix small{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(close(partial_trace_channel(2, 3).apply_dual(small), kron(small, Matrix::identity(3)), 0.0));
}

TEST_CASE("predual action") {
  Rng rng(2);
  const PsdElement h = random_state(rng, 3);
  CHECK(close(identity_channel(3).apply_predual(h).matrix(), h.matrix(), 1e-15));
  const PsdElement h2 = h.scaled(2.5);
  CHECK(close(depolarizing_channel(3, 1.0).apply_predual(h2).matrix(), Matrix::identity(3) * (2.5 / 3.0), 1e-14));

  // Partial trace oracle: sum the diagonal blocks by hand.
  const PsdElement big = random_state(rng, 6);
  Matrix reduced(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 3; ++k) reduced(i, j) += big.matrix()(i * 3 + k, j * 3 + k);
  CHECK(close(partial_trace_channel(2, 3).apply_predual(big.matrix()), reduced, 1e-14));
}

TEST_CASE("predual is trace preserving and dual to the channel") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t in = 2 + trial % 3;
    const std::size_t out = 2 + (trial / 3) % 3;
    const Channel ch = trial % 5 == 4 ? transpose_map(in) : random_channel(in, out, 1 + trial % 4 + out / in, trial);
    const PsdElement h = random_state(rng, ch.out_dim());
    const Matrix b = random_gaussian(rng, ch.in_dim(), ch.in_dim());
    const Matrix pre = ch.apply_predual(h.matrix());
    CHECK(std::abs(pre.trace().real() - h.trace()) < 1e-10);
    const Complex lhs = trace_product(pre, b);
    const Complex rhs = trace_product(h.matrix(), ch.apply_dual(b));
    CHECK(std::abs(lhs - rhs) < 1e-10);
    CHECK(close(ch.linear_map().apply_predual(h.matrix()), pre, 1e-12));
  }
}

TEST_CASE("random channels are deterministic and unital") {
  const Channel a = random_channel(3, 4, 3, 42);
  const Channel b = random_channel(3, 4, 3, 42);
  REQUIRE(a.kraus());
  for (std::size_t i = 0; i < a.kraus()->size(); ++i) CHECK((*a.kraus())[i] == (*b.kraus())[i]);
  CHECK(unitality_residual(a) < 1e-12);
  CHECK(a.completely_positive());
  CHECK(!transpose_map(3).completely_positive());
}

TEST_CASE("Petz recovery map") {
  Rng rng(4);
  const PsdElement phi = random_state(rng, 3);

  const auto rid = petz_recovery(identity_channel(3), phi);
  const Matrix a = random_hermitian(rng, 3);
  CHECK(close(rid.apply(a), a, 1e-9));

  const PsdElement dphi(Matrix::diagonal({0.5, 0.3, 0.2}));
  const auto rp = petz_recovery(pinching_channel(3), dphi);
  const Matrix g = random_gaussian(rng, 3, 3);
  CHECK(close(rp.apply(g), pinching_channel(3).apply_dual(g), 1e-12));

  for (int trial = 0; trial < 20; ++trial) {
    const Channel ch = random_channel(2 + trial % 3, 3, 2, 100 + trial);
    const PsdElement ph = random_state_mixed_rank(rng, 3);
    const auto r = petz_recovery(ch, ph);
    const Matrix x = random_gaussian(rng, 3, 3);
    CHECK(recovery_identity_residual(ch, r, x) < 1e-9);
    // φ∘γ∘γ*_φ = φ on s(φ)Ms(φ)
    const Matrix xs = r.domain_support * x * r.domain_support;
    CHECK(std::abs(trace_product(ph.matrix(), ch.apply_dual(r.apply(xs))) - trace_product(ph.matrix(), xs)) < 1e-9);
    // unital on the support
    CHECK(close(r.apply(r.domain_support), r.range_support, 1e-8));
    // double dual
    const auto rr = petz_recovery(r.map, r.phi_gamma);
    const Matrix y = r.range_support * random_gaussian(rng, ch.in_dim(), ch.in_dim()) * r.range_support;
    CHECK(close(rr.apply(y), r.domain_support * ch.apply_dual(y) * r.domain_support, 1e-8));
  }
  CHECK_THROWS_AS(petz_recovery(identity_channel(2), PsdElement::zero(2)), DomainError);
}

TEST_CASE("sandwich contraction and Carlen-Zhang instances") {
  Rng rng(5);
  const PsdElement phi = random_state(rng, 3);
  const Matrix b = random_gaussian(rng, 3, 3);
  const auto same = check_sandwich_contraction(identity_channel(3), phi, b, 2.0);
  CHECK(rel_diff(same.lhs, same.rhs) < 1e-12);
  CHECK_THROWS_AS(check_sandwich_contraction(identity_channel(3), phi, b, 0.5), DomainError);

  const auto cz_id = check_carlen_zhang(identity_channel(3), phi, b, 1.5);
  CHECK(rel_diff(cz_id.lhs, cz_id.rhs) < 1e-12);

  for (int trial = 0; trial < 50; ++trial) {
    const Channel ch = random_channel(2 + trial % 3, 2 + (trial / 3) % 3, 3, trial);
    const PsdElement ph = random_state_mixed_rank(rng, ch.out_dim());
    const Matrix bb = random_gaussian(rng, ch.in_dim(), ch.in_dim());
    const double p = uniform(rng, 1.0, 4.0);
    CHECK(check_sandwich_contraction(ch, ph, bb, p).ok);
    CHECK(check_carlen_zhang(ch, random_state(rng, ch.out_dim()), bb, p).ok);
  }
}

TEST_CASE("Choi inequality") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel ch = trial % 4 == 0 ? transpose_map(3) : random_channel(3, 3, 2, trial);
    CHECK(choi_gap(ch, random_state(rng, 3)) >= -1e-9);
  }
}
