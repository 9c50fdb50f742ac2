#include <doctest.h>

#include <cmath>

#include "azr/linalg.hpp"
#include "azr/random.hpp"
#include "support/check.hpp"

using namespace azr;
using azr_test::close;
using azr_test::rel_diff;

TEST_CASE("eigh on a diagonal matrix sorts ascending") {
  const auto s = eigh(Matrix::diagonal({2.0, 1.0}));
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(std::abs(s.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(s.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eigh on Pauli X") {
  const auto s = eigh(Matrix{{0.0, 1.0}, {1.0, 0.0}});
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
  const Complex ratio = s.eigenvectors(1, 0) / s.eigenvectors(0, 0);
  CHECK(ratio.real() == doctest::Approx(-1.0));
  CHECK(std::abs(s.eigenvectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  Rng rng(7);
  for (std::size_t n : {1u, 2u, 5u, 9u, 16u}) {
    const Matrix h = random_hermitian(rng, n);
    const auto s = eigh(h);
    CHECK(close(s.reconstruct(), h, 1e-10 * std::max(1.0, h.max_abs())));
    CHECK(close(s.eigenvectors.adjoint() * s.eigenvectors, Matrix::identity(n), 1e-12));
    CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
}

TEST_CASE("eigh is deterministic and rejects bad input") {
  Rng rng(3);
  const Matrix h = random_hermitian(rng, 6);
  const auto a = eigh(h);
  const auto b = eigh(h);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  CHECK_THROWS_AS(eigh(Matrix(2, 3)), DimensionError);
  Matrix bad = Matrix::identity(2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(eigh(bad), DomainError);
}

TEST_CASE("PsdElement validation") {
  CHECK_NOTHROW(PsdElement(Matrix::diagonal({1.0, 0.0})));
  CHECK_THROWS_AS(PsdElement(Matrix::diagonal({1.0, -0.5})), DomainError);
  CHECK_THROWS_AS(PsdElement(Matrix{{1.0, 1.0}, {0.0, 1.0}}), DomainError);
  CHECK_NOTHROW(PsdElement(Matrix::diagonal({1.0, -1e-12})));
}

TEST_CASE("mat_pow follows the kernel and pseudoinverse conventions") {
  const PsdElement a(Matrix::diagonal({4.0, 0.0}));
  CHECK(close(mat_pow(a, 0.5).matrix(), Matrix::diagonal({2.0, 0.0}), 1e-14));
  CHECK(close(mat_pow(a, -0.5).matrix(), Matrix::diagonal({0.5, 0.0}), 1e-14));
  CHECK(close(mat_pow(a, 0.0).matrix(), Matrix::diagonal({1.0, 0.0}), 1e-14));
  CHECK(close(mat_pow(a, 1.0).matrix(), a.matrix(), 1e-14));
}

TEST_CASE("mat_pow is additive in the exponent") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PsdElement a = random_state(rng, 4, {trial % 3 == 0 ? std::size_t{2} : std::size_t{0}, false});
    const double s = uniform(rng, 0.1, 2.0);
    const double t = uniform(rng, 0.1, 2.0);
    CHECK(close(mat_pow(a, s).matrix() * mat_pow(a, t).matrix(), mat_pow(a, s + t).matrix(),
                1e-10 * std::pow(std::max(1.0, a.max_eigenvalue()), s + t)));
  }
}

TEST_CASE("support projection") {
  CHECK(close(support_projection(PsdElement(Matrix::diagonal({1.0, 0.0}))), Matrix::diagonal({1.0, 0.0}), 0.0));
  Rng rng(5);
  const PsdElement full = random_state(rng, 4);
  CHECK(close(support_projection(full), Matrix::identity(4), 1e-12));

  const Matrix v = random_unitary(rng, 4);
  const PsdElement r2 = PsdElement::from_product(v * Matrix::diagonal({1.0, 0.5, 0.0, 0.0}) * v.adjoint());
  const Matrix p = support_projection(r2);
  CHECK(p.trace().real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(close(p * p, p, 1e-12));
  CHECK(close(p * r2.matrix(), r2.matrix(), 1e-12));
  CHECK(r2.rank() == 2);
}

TEST_CASE("Schatten norms") {
  CHECK(schatten_norm(Matrix::identity(3), 2.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(schatten_norm(Matrix::diagonal({3.0, 4.0}), INFINITY) == doctest::Approx(4.0));
  CHECK_THROWS_AS(schatten_norm(Matrix::identity(2), 0.0), DomainError);
  CHECK_THROWS_AS(schatten_norm(Matrix::identity(2), -1.0), DomainError);

  Rng rng(13);
  const Matrix a = random_gaussian(rng, 4, 4);
  // Oracle: singular values as square roots of eigenvalues of A*A.
  const auto e = eigh(a.adjoint() * a);
  double trace_norm = 0.0;
  for (double l : e.eigenvalues) trace_norm += std::sqrt(std::max(l, 0.0));
  CHECK(rel_diff(schatten_norm(a, 1.0), trace_norm) < 1e-12);

  const Matrix u = random_unitary(rng, 4);
  for (double p : {0.5, 1.0, 2.5}) CHECK(rel_diff(schatten_norm(u * a, p), schatten_norm(a, p)) < 1e-12);
}

TEST_CASE("singular values") {
  const auto d = singular_values(Matrix::diagonal({-2.0, 1.0}));
  CHECK(d[0] == doctest::Approx(2.0));
  CHECK(d[1] == doctest::Approx(1.0));

  Matrix u(3, 1);
  u(0, 0) = 0.6;
  u(2, 0) = Complex(0.0, 0.8);
  Matrix v(3, 1);
  v(1, 0) = 1.0;
  const auto r1 = singular_values(u * v.adjoint());
  CHECK(r1[0] == doctest::Approx(1.0));
  CHECK(r1[1] == doctest::Approx(0.0));
  CHECK(r1[2] == doctest::Approx(0.0));

  Rng rng(17);
  const Matrix a = random_gaussian(rng, 4, 4);
  const Matrix b = random_gaussian(rng, 4, 4);
  const auto ab = singular_values(a * b);
  const auto ba = singular_values(b * a);
  // σ(ab) and σ(ba) differ in general; their products (|det|) agree.
  double pab = 1.0;
  double pba = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    pab *= ab[i];
    pba *= ba[i];
  }
  CHECK(rel_diff(pab, pba) < 1e-10);

  // For Hermitian a, b the two products are adjoint to each other.
  const Matrix ha = random_hermitian(rng, 4);
  const Matrix hb = random_hermitian(rng, 4);
  const auto s1 = singular_values(ha * hb);
  const auto s2 = singular_values(hb * ha);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-10);
  CHECK(singular_values(random_gaussian(rng, 2, 5)).size() == 2);
}

TEST_CASE("singular values of xy and yx agree for psd x, y") {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const PsdElement x = random_state(rng, 4);
    const PsdElement y = random_state(rng, 4);
    const Matrix xh = mat_pow(x, 0.5).matrix();
    const Matrix yh = mat_pow(y, 0.5).matrix();
    const auto s1 = singular_values(xh * y.matrix() * xh);
    const auto s2 = singular_values(yh * x.matrix() * yh);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-12);
  }
}

TEST_CASE("polar decomposition") {
  Rng rng(23);
  const PsdElement a = random_state(rng, 3, {2, true});
  const auto pa = polar_decompose(a.matrix());
  CHECK(close(pa.abs.matrix(), a.matrix(), 1e-12));
  CHECK(close(pa.partial_isometry, support_projection(a), 1e-8));

  const Matrix u = random_unitary(rng, 3);
  const auto pu = polar_decompose(u);
  CHECK(close(pu.partial_isometry, u, 1e-10));
  CHECK(close(pu.abs.matrix(), Matrix::identity(3), 1e-10));

  const Matrix g = random_gaussian(rng, 3, 3);
  const auto pg = polar_decompose(g);
  CHECK(close(pg.partial_isometry * pg.abs.matrix(), g, 1e-10));
  const Matrix uu = pg.partial_isometry.adjoint() * pg.partial_isometry;
  CHECK(close(uu * uu, uu, 1e-10));
}

TEST_CASE("contraction factor") {
  Rng rng(29);
  const PsdElement b = random_state(rng, 4);
  const Matrix c1 = contraction_factor(b, b);
  CHECK(close(c1, Matrix::identity(4), 1e-8));

  const Matrix c2 = contraction_factor(b.scaled(0.5), b);
  CHECK(close(c2, Matrix::identity(4) * (1.0 / std::sqrt(2.0)), 1e-8));

  for (int trial = 0; trial < 20; ++trial) {
    const PsdElement bb = random_state(rng, 4, {trial % 2 == 0 ? std::size_t{0} : std::size_t{3}, true});
    const PsdElement k = random_contraction(rng, 4);
    const Matrix bh = mat_pow(bb, 0.5).matrix();
    const PsdElement a = PsdElement::from_product(bh * k.matrix() * bh);
    const Matrix c = contraction_factor(a, bb);
    CHECK(close(mat_pow(a, 0.5).matrix(), c * bh, 1e-9));
    CHECK(schatten_norm(c, INFINITY) <= 1.0 + 1e-10);
  }

  try {
    contraction_factor(PsdElement::identity(2), PsdElement(Matrix::diagonal({2.0, 0.5})));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(e.offending_value() == doctest::Approx(-0.5));
  }
}

TEST_CASE("Kosaki embedding") {
  Rng rng(31);
  const Matrix a = random_gaussian(rng, 3, 3);
  const PsdElement h = random_state(rng, 3);
  CHECK(close(kosaki_embed(a, h, 1.0), a, 1e-12));
  CHECK(close(kosaki_embed(a, PsdElement::identity(3), 2.0), a, 1e-12));
  const Matrix b = random_gaussian(rng, 3, 3);
  CHECK(close(kosaki_embed(a + b * 2.0, h, 3.0), kosaki_embed(a, h, 3.0) + kosaki_embed(b, h, 3.0) * 2.0, 1e-12));
  CHECK_THROWS_AS(kosaki_embed(a, h, 0.5), DomainError);
}

TEST_CASE("Hölder equality detection") {
  Rng rng(37);
  const PsdElement y = random_state(rng, 3);
  auto same = holder_equality_check(y, y, 2.0, 2.0, 1.0);
  REQUIRE(std::holds_alternative<HolderProportional>(same));
  CHECK(std::get<HolderProportional>(same).lambda == doctest::Approx(1.0).epsilon(1e-10));

  auto orth = holder_equality_check(PsdElement(Matrix::diagonal({1.0, 0.0})), PsdElement(Matrix::diagonal({0.0, 1.0})),
                                    2.0, 2.0, 1.0);
  CHECK(std::holds_alternative<HolderStrict>(orth));

  const double p = 3.0;
  const double q = 1.5;
  const PsdElement x = mat_pow(mat_pow(y, q).scaled(3.0), 1.0 / p);
  auto prop = holder_equality_check(x, y, p, q, 1.0);
  REQUIRE(std::holds_alternative<HolderProportional>(prop));
  CHECK(std::get<HolderProportional>(prop).oriented);
  CHECK(std::abs(std::get<HolderProportional>(prop).lambda - 3.0) < 1e-8);

  CHECK(std::holds_alternative<HolderZero>(holder_equality_check(PsdElement::zero(3), y, 2.0, 2.0, 1.0)));
  CHECK_THROWS_AS(holder_equality_check(x, y, 2.0, 2.0, 2.0), DomainError);
}

TEST_CASE("Hölder detector has no false positives on strict pairs") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const PsdElement x = random_state(rng, 3);
    const PsdElement y = random_state(rng, 3);
    const double p = uniform(rng, 1.2, 4.0);
    const double q = uniform(rng, 1.2, 4.0);
    const double r = 1.0 / (1.0 / p + 1.0 / q);
    const double gap = holder_gap(x, y, p, q, r);
    const auto res = holder_equality_check(x, y, p, q, r);
    const double scale = std::pow(trace_pow(x, p), 1.0 / p) * std::pow(trace_pow(y, q), 1.0 / q);
    if (gap > 2e-10 * scale) CHECK(!std::holds_alternative<HolderProportional>(res));
  }
}

TEST_CASE("sandwich trace power matches the direct formula") {
  Rng rng(43);
  const PsdElement h = random_state(rng, 4, {3, false});
  const Matrix m = random_gaussian(rng, 4, 4);
  const double e = 0.35;
  const double s = 1.7;
  const Matrix he = mat_pow(h, e).matrix();
  const PsdElement inner = PsdElement::from_product(he * m * m.adjoint() * he);
  CHECK(rel_diff(sandwich_trace_power(h, e, m, s), trace_pow(inner, s)) < 1e-10);
}

TEST_CASE("hermitian_exp") {
  const PsdElement e = hermitian_exp(Matrix::diagonal({0.0, std::log(2.0)}));
  CHECK(close(e.matrix(), Matrix::diagonal({1.0, 2.0}), 1e-14));
}
