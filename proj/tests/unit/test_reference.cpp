// Reference values from tests/oracles/reference_values.py (40-digit mpmath).
#include <doctest.h>

#include "azr/divergence.hpp"
#include "support/check.hpp"

using namespace azr;
using azr_test::rel_diff;

namespace {

const Complex I(0.0, 1.0);

PsdElement psi() {
  return PsdElement(Matrix{{0.5, 0.1 + 0.2 * I, 0.0}, {0.1 - 0.2 * I, 0.3, 0.05 * I}, {0.0, -0.05 * I, 0.2}});
}

PsdElement phi() { return PsdElement(Matrix{{0.4, 0.1, 0.1 * I}, {0.1, 0.35, 0.0}, {-0.1 * I, 0.0, 0.25}}); }

PsdElement phi_rank2() {
  const Matrix v{{1.0}, {0.5 * I}, {-0.25}};
  const Matrix w{{0.2}, {1.0}, {0.3 - 0.1 * I}};
  return PsdElement::from_product((v * v.adjoint() + w * w.adjoint()) * 0.5);
}

struct Case {
  double alpha;
  double z;
  double q;
};

}  // namespace

TEST_CASE("Q matches high-precision values on a faithful pair") {
  const StatePair pair(psi(), phi());
  const Case cases[] = {
      {0.5, 1.0, 0.95330068721115089713}, {0.3, 0.5, 0.96069310451543713811}, {0.7, 2.0, 0.96104419717023183322},
      {0.4, 0.4, 0.95618013511511068662}, {2.0, 1.0, 1.4051724137931034679},  {1.5, 1.5, 1.1396705733060596424},
      {3.0, 2.0, 2.3582226141681093995},  {2.0, 0.8, 1.4199970396960923403},
  };
  for (const Case& c : cases) {
    CAPTURE(c.alpha);
    CAPTURE(c.z);
    const auto q = q_alpha_z(pair, DivergenceParams(c.alpha, c.z));
    REQUIRE(q.is_finite());
    CHECK(rel_diff(q.value(), c.q) < 1e-12);
  }
}

TEST_CASE("Q matches high-precision values against a rank-two reference") {
  const StatePair pair(psi(), phi_rank2());
  CHECK(phi_rank2().rank() == 2);
  const Case cases[] = {
      {0.5, 1.0, 0.84046104050967864585}, {0.3, 0.5, 0.94867034427859968536}, {0.7, 2.0, 0.77498924662376399545}};
  for (const Case& c : cases) {
    CAPTURE(c.alpha);
    CAPTURE(c.z);
    CHECK(rel_diff(q_alpha_z(pair, DivergenceParams(c.alpha, c.z)).value(), c.q) < 1e-11);
  }
  CHECK(q_alpha_z(pair, DivergenceParams(2.0, 1.0)).is_infinite());
}

TEST_CASE("Petz and sandwiched routes agree with the reference values") {
  const StatePair pair(psi(), phi());
  CHECK(rel_diff(petz_q(pair, 0.5).value(), 0.95330068721115089713) < 1e-12);
  CHECK(rel_diff(petz_q(pair, 2.0).value(), 1.4051724137931034679) < 1e-12);
  CHECK(rel_diff(sandwiched_q(pair, 0.4).value(), 0.95618013511511068662) < 1e-12);
  CHECK(rel_diff(sandwiched_q(pair, 1.5).value(), 1.1396705733060596424) < 1e-12);
}
