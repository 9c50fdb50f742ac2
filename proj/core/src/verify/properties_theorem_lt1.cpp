#include "azr/variational.hpp"
#include "common.hpp"

namespace azr::verify::detail {

namespace {

constexpr const char* kGroup = "theorem-lt1";

double regime_z(Rng& rng, double alpha) { return z_from(rng, alpha, std::max(alpha, 1.0 - alpha)); }

Instance with_params(Instance inst, double alpha, double z) { return inst.set("alpha", alpha).set("z", z); }

double q_of(const StatePair& pair, const DivergenceParams& params) { return q_alpha_z(pair, params).value(); }

}  // namespace

Property clause_scaling_lt1() {
  return {.name = "scaling/lt1",
          .group = kGroup,
          .clause = "α < 1: Q(λψ‖μφ) = λ^α μ^{1−α} Q(ψ‖φ) for λ, μ ≥ 0",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const auto factor = [&] {
                  return uniform(ctx.rng, 0.0, 1.0) < 0.1 ? 0.0 : std::exp(uniform(ctx.rng, -4.0, 4.0));
                };
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim)).set("lambda", factor()).set("mu", factor());
                const double alpha = alpha_below(ctx.rng);
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double lambda = inst.scalar("lambda");
                const double mu = inst.scalar("mu");
                const double a = params.alpha();
                const double factor = std::pow(lambda, a) * std::pow(mu, 1.0 - a);
                const double lhs = q_of(pair.scaled(lambda, mu), params);
                const double rhs = factor * q_of(pair, params);
                return Outcome{equal(lhs, rhs, factor * natural_scale(pair, a)), false, {}};
              }};
}

Property clause_direct_sum_lt1() {
  return {.name = "direct-sum/lt1",
          .group = kGroup,
          .clause = "α < 1: Q(ψ₁⊕ψ₂‖φ₁⊕φ₂) = Q(ψ₁‖φ₁) + Q(ψ₂‖φ₂)",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const auto n2 = static_cast<std::size_t>(uniform(ctx.rng, 1.0, 4.0));
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim), "psi1", "phi1");
                put_pair(inst, pair_below(ctx.rng, n2), "psi2", "phi2");
                const double alpha = alpha_below(ctx.rng);
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair a = get_pair(inst, "psi1", "phi1");
                const StatePair b = get_pair(inst, "psi2", "phi2");
                const DivergenceParams params = get_params(inst);
                const StatePair ab = direct_sum(a, b);
                return Outcome{equal(q_of(ab, params), q_of(a, params) + q_of(b, params),
                                     natural_scale(ab, params.alpha())),
                               false,
                               {}};
              }};
}

Property clause_order_lt1() {
  return {.name = "order/lt1",
          .group = kGroup,
          .clause = "α < 1: Q increases in ψ when z ≥ α and in φ when z ≥ 1 − α",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                const bool in_psi = ctx.trial % 2 == 0;
                const PsdElement big = any_state(ctx.rng, ctx.dim);
                const PsdElement other = any_state(ctx.rng, ctx.dim);
                Instance inst;
                inst.set("big", big.matrix()).set("small", below(ctx.rng, big)).set("other", other.matrix());
                inst.set("in_psi", in_psi ? 1.0 : 0.0);
                return with_params(inst, alpha, z_from(ctx.rng, alpha, in_psi ? alpha : 1.0 - alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const DivergenceParams params = get_params(inst);
                const bool in_psi = inst.scalar("in_psi") != 0.0;
                const PsdElement big = inst.state("big");
                const PsdElement small = inst.state("small");
                const PsdElement other = inst.state("other");
                const StatePair lo = in_psi ? StatePair(small, other) : StatePair(other, small);
                const StatePair hi = in_psi ? StatePair(big, other) : StatePair(other, big);
                return Outcome{leq(q_of(lo, params), q_of(hi, params), natural_scale(hi, params.alpha())), false, {}};
              }};
}

Property clause_continuity_lt1() {
  return {.name = "continuity/lt1",
          .group = kGroup,
          .clause = "α < 1: Q is jointly continuous in (ψ, φ)",
          .tolerance = Tolerance::fixed(0.0),
          .evidence = "sequence-based: along (ψ + δK, φ + δK'), δ = 1e-2 … 1e-14, the error at the end must "
                      "shrink at least like 4 (δ ratio)^{min(α,1−α)/max(1,z)} relative to its start",
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim));
                inst.set("k_psi", random_state(ctx.rng, ctx.dim).matrix());
                inst.set("k_phi", random_state(ctx.rng, ctx.dim).matrix());
                return with_params(inst, alpha_below(ctx.rng), uniform(ctx.rng, kMinZ, 3.0));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double alpha = params.alpha();
                const double q = q_of(pair, params);
                const auto profile = perturbed_profile(inst, params);
                const double scale = std::max(q, natural_scale(pair, alpha));
                const auto err = [&](ExtendedNonneg v) { return std::abs(v.as_double() - q) / scale; };
                const double first = std::max(err(profile[0]), err(profile[1]));
                const double last = err(profile.back());
                const double rho = std::min(alpha, 1.0 - alpha) / std::max(1.0, params.z());
                const double allowed = std::max(1e-12, 4.0 * first * std::pow(1e-12, rho));
                return Outcome{last - allowed, false,
                               "error " + std::to_string(first) + " -> " + std::to_string(last)};
              }};
}

Property clause_eps_limit_lt1() {
  return {.name = "eps-limit/lt1",
          .group = kGroup,
          .clause = "α < 1, z ≥ max{α, 1−α}: Q(ψ + εφ‖φ + εψ) decreases to Q(ψ‖φ) as ε ↓ 0",
          .tolerance = Tolerance::relative(),
          .evidence = "monotone decrease and the lower bound Q are checked on ε = 1, 1e-1, …, 1e-6",
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim));
                return with_params(inst, alpha, regime_z(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double q = q_of(pair, params);
                const double floor = natural_scale(regularize(pair, 1.0), params.alpha());
                double worst = -kInf;
                double prev = kInf;
                for (int k = 0; k <= 6; ++k) {
                  const double qe = q_of(regularize(pair, std::pow(10.0, -k)), params);
                  worst = std::max({worst, leq(q, qe, floor), prev < kInf ? leq(qe, prev, floor) : -kInf});
                  prev = qe;
                }
                return Outcome{worst, false, {}};
              }};
}

Property clause_variational_lt1() {
  return {.name = "variational/lt1",
          .group = kGroup,
          .clause = "α < 1: Q ≤ α tr((a^{1/2}h_ψ^{α/z}a^{1/2})^{z/α}) + (1−α) tr((a^{-1/2}h_φ^{(1−α)/z}a^{-1/2})^{z/(1−α)}) for a > 0",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim));
                const Matrix h = random_hermitian(ctx.rng, ctx.dim) * uniform(ctx.rng, 0.0, 1.5);
                inst.set("a", hermitian_exp(h).matrix());
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double alpha = params.alpha();
                const VariationalTerms t = objective_lower_terms(inst.state("a"), pair, params);
                const double q = q_of(pair, params);
                const double young = std::pow(t.psi_term, alpha) * std::pow(t.phi_term, 1.0 - alpha);
                const double floor = natural_scale(pair, alpha);
                return Outcome{std::max(leq(q, t.value, floor), leq(young, t.value, floor)), false, {}};
              }};
}

Property clause_positivity_lt1() {
  return {.name = "positivity/lt1",
          .group = kGroup,
          .clause = "α < 1: Q(ψ‖φ) ≤ ψ(1)^α φ(1)^{1−α}",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim));
                const double alpha = alpha_below(ctx.rng);
                return with_params(inst, alpha, z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                return Outcome{leq(q_of(pair, params), natural_scale(pair, params.alpha())), false, {}};
              }};
}

Property clause_dpi_lt1() {
  return {.name = "dpi/lt1",
          .group = kGroup,
          .clause = "α < 1, z ≥ max{α, 1−α}, γ unital positive: Q(ψ∘γ‖φ∘γ) ≥ Q(ψ‖φ)",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                Instance inst;
                const Channel ch = random_unital_map(ctx.rng, ctx.dim, true);
                put_pair(inst, pair_below(ctx.rng, ch.out_dim()));
                inst.set_channel(ch);
                return with_params(inst, alpha, regime_z(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const Channel& ch = inst.channel();
                const StatePair pulled(ch.apply_predual(pair.psi()), ch.apply_predual(pair.phi()));
                return Outcome{leq(q_of(pair, params), q_of(pulled, params), natural_scale(pair, params.alpha())),
                               false,
                               ch.completely_positive() ? "completely positive" : "positive, not CP"};
              }};
}

Property clause_concavity_lt1() {
  return {.name = "concavity/lt1",
          .group = kGroup,
          .clause = "α < 1, z ≥ max{α, 1−α}: Q is jointly concave",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim), "psi1", "phi1");
                put_pair(inst, pair_below(ctx.rng, ctx.dim), "psi2", "phi2");
                inst.set("t", uniform(ctx.rng, 0.0, 1.0));
                return with_params(inst, alpha, regime_z(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair a = get_pair(inst, "psi1", "phi1");
                const StatePair b = get_pair(inst, "psi2", "phi2");
                const DivergenceParams params = get_params(inst);
                const double t = inst.scalar("t");
                const StatePair mix(PsdElement::from_product(a.psi().matrix() * t + b.psi().matrix() * (1.0 - t)),
                                    PsdElement::from_product(a.phi().matrix() * t + b.phi().matrix() * (1.0 - t)));
                const double rhs = t * q_of(a, params) + (1.0 - t) * q_of(b, params);
                return Outcome{leq(rhs, q_of(mix, params), natural_scale(mix, params.alpha())), false, {}};
              }};
}

Property clause_z_monotone_lt1() {
  return {.name = "z-monotone/lt1",
          .group = kGroup,
          .clause = "α < 1: z ≤ z' implies Q_{α,z} ≥ Q_{α,z'}",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                const double z = z_any(ctx.rng, alpha);
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim));
                inst.set("z2", z + uniform(ctx.rng, 0.0, 3.0));
                return with_params(inst, alpha, z);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double q1 = q_of(pair, params);
                const double q2 = q_of(pair, DivergenceParams(params.alpha(), inst.scalar("z2")));
                return Outcome{leq(q2, q1, natural_scale(pair, params.alpha())), false, {}};
              }};
}

}  // namespace azr::verify::detail
