#include "azr/variational.hpp"
#include "common.hpp"

namespace azr::verify::detail {

namespace {

constexpr const char* kGroup = "theorem-gt1";

Instance with_params(Instance inst, double alpha, double z) { return inst.set("alpha", alpha).set("z", z); }

}  // namespace

Property clause_scaling_gt1() {
  return {.name = "scaling/gt1",
          .group = kGroup,
          .clause = "α > 1: Q(λψ‖μφ) = λ^α μ^{1−α} Q(ψ‖φ), except μ = 0 with λψ ≠ 0 where Q = ∞",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const auto factor = [&] {
                  return uniform(ctx.rng, 0.0, 1.0) < 0.1 ? 0.0 : std::exp(uniform(ctx.rng, -4.0, 4.0));
                };
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim)).set("lambda", factor()).set("mu", factor());
                const double alpha = alpha_above(ctx.rng);
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double lambda = inst.scalar("lambda");
                const double mu = inst.scalar("mu");
                const double a = params.alpha();
                const auto lhs = q_alpha_z(pair.scaled(lambda, mu), params);
                ExtendedNonneg rhs;
                if (lambda == 0.0 || pair.psi().is_zero()) {
                  rhs = ExtendedNonneg::finite(0.0);
                } else if (mu == 0.0) {
                  rhs = ExtendedNonneg::infinity();
                } else {
                  rhs = ExtendedNonneg::finite(std::pow(lambda, a) * std::pow(mu, 1.0 - a)) * q_alpha_z(pair, params);
                }
                const double floor = lambda > 0.0 && mu > 0.0 ? std::pow(lambda, a) * std::pow(mu, 1.0 - a) * natural_scale(pair, a) : 0.0;
                return Outcome{equal(lhs, rhs, floor), false, describe(lhs, rhs)};
              }};
}

Property clause_direct_sum_gt1() {
  return {.name = "direct-sum/gt1",
          .group = kGroup,
          .clause = "α > 1: Q(ψ₁⊕ψ₂‖φ₁⊕φ₂) = Q(ψ₁‖φ₁) + Q(ψ₂‖φ₂) in [0, ∞]",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const auto n2 = static_cast<std::size_t>(uniform(ctx.rng, 1.0, 4.0));
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim), "psi1", "phi1");
                put_pair(inst, pair_above(ctx.rng, n2), "psi2", "phi2");
                const double alpha = alpha_above(ctx.rng);
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair a = get_pair(inst, "psi1", "phi1");
                const StatePair b = get_pair(inst, "psi2", "phi2");
                const DivergenceParams params = get_params(inst);
                const StatePair ab = direct_sum(a, b);
                const auto lhs = q_alpha_z(ab, params);
                const auto rhs = q_alpha_z(a, params) + q_alpha_z(b, params);
                return Outcome{equal(lhs, rhs, natural_scale(ab, params.alpha())), false, describe(lhs, rhs)};
              }};
}

Property clause_order_gt1() {
  return {.name = "order/gt1",
          .group = kGroup,
          .clause = "α > 1: Q increases in ψ when z ≥ α and decreases in φ when z ≥ α − 1",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_above(ctx.rng);
                const bool in_psi = ctx.trial % 2 == 0;
                Instance inst;
                if (in_psi) {
                  const PsdElement phi = any_state(ctx.rng, ctx.dim);
                  const PsdElement big = uniform(ctx.rng, 0.0, 1.0) < 0.75 ? state_in_support(ctx.rng, phi)
                                                                           : any_state(ctx.rng, ctx.dim);
                  inst.set("big", big.matrix()).set("small", below(ctx.rng, big)).set("other", phi.matrix());
                } else {
                  const PsdElement big = any_state(ctx.rng, ctx.dim);
                  const Matrix small = below(ctx.rng, big);
                  const PsdElement psi = uniform(ctx.rng, 0.0, 1.0) < 0.75
                                             ? state_in_support(ctx.rng, PsdElement::from_product(small))
                                             : state_in_support(ctx.rng, big);
                  inst.set("big", big.matrix()).set("small", small).set("other", psi.matrix());
                }
                inst.set("in_psi", in_psi ? 1.0 : 0.0);
                return with_params(inst, alpha, z_from(ctx.rng, alpha, in_psi ? alpha : alpha - 1.0));
              },
          .evaluate =
              [](const Instance& inst) {
                const DivergenceParams params = get_params(inst);
                const PsdElement big = inst.state("big");
                const PsdElement small = inst.state("small");
                const PsdElement other = inst.state("other");
                if (inst.scalar("in_psi") != 0.0) {
                  const auto lo = q_alpha_z(StatePair(small, other), params);
                  const auto hi = q_alpha_z(StatePair(big, other), params);
                  if (hi.is_infinite()) return Outcome::skip("Q(ψ₂‖φ) = inf");
                  return Outcome{leq(lo, hi, natural_scale(StatePair(big, other), params.alpha())), false,
                                 describe(lo, hi)};
                }
                const auto lo = q_alpha_z(StatePair(other, big), params);
                const auto hi = q_alpha_z(StatePair(other, small), params);
                if (hi.is_infinite()) return Outcome::skip("Q(ψ‖φ₁) = inf");
                return Outcome{leq(lo, hi, natural_scale(StatePair(other, big), params.alpha())), false,
                               describe(lo, hi)};
              }};
}

Property clause_lsc_gt1() {
  return {.name = "lsc/gt1",
          .group = kGroup,
          .clause = "α > 1, z ≥ α/2: Q is jointly lower semicontinuous",
          .tolerance = Tolerance::fixed(0.0),
          .evidence = "sequence-based: along (ψ + δK, φ + δK'), δ = 1e-2 … 1e-14, any shortfall below Q at the "
                      "end must shrink like 4 (δ ratio)^{1/(2 max(1,z))} relative to its start; for Q = ∞ the "
                      "sequence must not decrease",
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_above(ctx.rng);
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim));
                inst.set("k_psi", random_state(ctx.rng, ctx.dim).matrix());
                inst.set("k_phi", random_state(ctx.rng, ctx.dim).matrix());
                return with_params(inst, alpha, z_from(ctx.rng, alpha, alpha / 2.0));
              },
          .evaluate = [](const Instance& inst) { return lsc_outcome(inst); }};
}

Property clause_eps_limit_gt1() {
  return {.name = "eps-limit/gt1",
          .group = kGroup,
          .clause = "α > 1, z ≥ max{α−1, α/2}: Q(ψ‖φ + εψ) increases to Q(ψ‖φ) as ε ↓ 0",
          .tolerance = Tolerance::relative(),
          .evidence = "monotone increase and the upper bound Q are checked on ε = 1, 1e-1, …, 1e-6",
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_above(ctx.rng);
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim));
                return with_params(inst, alpha, z_from(ctx.rng, alpha, std::max(alpha - 1.0, alpha / 2.0)));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const auto q = q_alpha_z(pair, params);
                const double floor = natural_scale(pair, params.alpha());
                double worst = -kInf;
                ExtendedNonneg prev = ExtendedNonneg::finite(0.0);
                for (int k = 0; k <= 6; ++k) {
                  const StatePair moved(pair.psi(), PsdElement::from_product(pair.phi().matrix() +
                                                                              pair.psi().matrix() * std::pow(10.0, -k)));
                  const auto qe = q_alpha_z(moved, params);
                  worst = std::max({worst, leq(qe, q, floor), leq(prev, qe, floor)});
                  prev = qe;
                }
                return Outcome{worst, false, q.is_infinite() ? "Q = inf" : ""};
              }};
}

Property clause_variational_gt1() {
  return {.name = "variational/gt1",
          .group = kGroup,
          .clause = "α > 1: α tr((a^{1/2}h_ψ^{α/z}a^{1/2})^{z/α}) − (α−1) tr((a^{1/2}h_φ^{(α−1)/z}a^{1/2})^{z/(α−1)}) ≤ Q for a ≥ 0",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim));
                const Matrix h = random_hermitian(ctx.rng, ctx.dim) * uniform(ctx.rng, 0.0, 1.5);
                Matrix a = hermitian_exp(h).matrix();
                if (uniform(ctx.rng, 0.0, 1.0) < 0.25) a = random_state_mixed_rank(ctx.rng, ctx.dim).matrix() * 3.0;
                inst.set("a", a);
                const double alpha = alpha_above(ctx.rng);
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const auto q = q_alpha_z(pair, params);
                if (q.is_infinite()) return Outcome::skip("Q = inf");
                const double v = objective_upper(inst.state("a"), pair, params);
                return Outcome{leq(v, q.value(), natural_scale(pair, params.alpha())), false, {}};
              }};
}

Property clause_positivity_gt1() {
  return {.name = "positivity/gt1",
          .group = kGroup,
          .clause = "α > 1: Q(ψ‖φ) ≥ ψ(1)^α φ(1)^{1−α}",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim));
                const double alpha = alpha_above(ctx.rng);
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const auto q = q_alpha_z(pair, params);
                const double bound = natural_scale(pair, params.alpha());
                return Outcome{leq(ExtendedNonneg::finite(bound), q), false, q.is_infinite() ? "Q = inf" : ""};
              }};
}

}  // namespace azr::verify::detail
