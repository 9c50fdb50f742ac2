#include "azr/variational.hpp"
#include "common.hpp"

namespace azr::verify::detail {

namespace {

Outcome compare_equal(ExtendedNonneg a, ExtendedNonneg b, double floor) {
  return {equal(a, b, floor), false, describe(a, b)};
}

double any_alpha(Rng& rng) { return uniform(rng, 0.0, 1.0) < 0.5 ? alpha_below(rng) : alpha_above(rng); }

StatePair any_pair(Rng& rng, std::size_t n, double alpha) {
  return alpha > 1.0 ? pair_above(rng, n) : pair_below(rng, n);
}

Property diagonal_oracle() {
  return {.name = "diagonal-oracle",
          .group = "divergence",
          .clause = "commuting states: Q = Σ p_i^α q_i^{1−α} for every z (∞ when mass escapes)",
          .tolerance = Tolerance::fixed(1e-9),
          .generate =
              [](TrialContext& ctx) {
                static constexpr double alphas[] = {0.3, 0.5, 0.7, 1.5, 2.0, 3.0};
                const double alpha = alphas[ctx.trial % 6];
                const double zs[] = {0.5, 1.0, alpha, 2.0};
                const double z = zs[(ctx.trial / 6) % 4];
                const auto c = random_commuting_pair(ctx.rng, ctx.dim, 0.2);
                Instance inst;
                put_pair(inst, c.pair).set("p", Matrix::diagonal(c.p)).set("q", Matrix::diagonal(c.q));
                return inst.set("alpha", alpha).set("z", z);
              },
          .evaluate =
              [](const Instance& inst) {
                const DivergenceParams params = get_params(inst);
                const double alpha = params.alpha();
                const Matrix& p = inst.matrix("p");
                const Matrix& q = inst.matrix("q");
                double sum = 0.0;
                bool infinite = false;
                for (std::size_t i = 0; i < p.rows(); ++i) {
                  const double pi = p(i, i).real();
                  const double qi = q(i, i).real();
                  if (pi == 0.0) continue;
                  if (qi == 0.0) {
                    infinite = infinite || alpha > 1.0;
                    continue;
                  }
                  sum += std::pow(pi, alpha) * std::pow(qi, 1.0 - alpha);
                }
                const auto oracle = infinite ? ExtendedNonneg::infinity() : ExtendedNonneg::finite(sum);
                return compare_equal(q_alpha_z(get_pair(inst), params), oracle, natural_scale(get_pair(inst), alpha));
              }};
}

Property specialization(bool petz) {
  Property p{.name = petz ? "petz-specialization" : "sandwiched-specialization",
             .group = "divergence",
             .clause = petz ? "Q_{α,1} equals the Petz quantity tr(h_ψ^α h_φ^{1−α})"
                            : "Q_{α,α} equals the sandwiched quantity",
             .tolerance = Tolerance::fixed(1e-9)};
  p.generate = [petz](TrialContext& ctx) {
    double alpha = any_alpha(ctx.rng);
    while (!petz && alpha < min_z(alpha)) alpha = any_alpha(ctx.rng);
    Instance inst;
    put_pair(inst, any_pair(ctx.rng, ctx.dim, alpha));
    return inst.set("alpha", alpha);
  };
  p.evaluate = [petz](const Instance& inst) {
    const double alpha = inst.scalar("alpha");
    const StatePair pair = get_pair(inst);
    const double floor = natural_scale(pair, alpha);
    if (petz) return compare_equal(petz_q(pair, alpha), q_alpha_z(pair, DivergenceParams(alpha, 1.0)), floor);
    return compare_equal(sandwiched_q(pair, alpha), q_alpha_z(pair, DivergenceParams(alpha, alpha)), floor);
  };
  return p;
}

Property q_self() {
  return {.name = "q-self",
          .group = "divergence",
          .clause = "Q(ψ‖ψ) = ψ(1), hence D(ψ‖ψ) = 0",
          .tolerance = Tolerance::fixed(1e-10),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = any_alpha(ctx.rng);
                Instance inst;
                inst.set("psi", any_state(ctx.rng, ctx.dim).matrix());
                return inst.set("alpha", alpha).set("z", z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const PsdElement psi = inst.state("psi");
                const auto q = q_alpha_z(StatePair(psi, psi), get_params(inst));
                return compare_equal(q, ExtendedNonneg::finite(psi.trace()), 0.0);
              }};
}

Property identity_witness_norms() {
  return {.name = "identity-witness-norms",
          .group = "divergence",
          .clause = "α > 1: the two factorizations give ‖x‖_z^z = ‖y‖_{2z}^{2z} = Q with small residual",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim));
                const double alpha = alpha_above(ctx.rng);
                return inst.set("alpha", alpha).set("z", z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const auto q = q_alpha_z(pair, params);
                const auto x = solve_identity_x(pair, params);
                const auto y = solve_identity_y(pair, params);
                if (q.is_infinite()) {
                  if (x || y) return Outcome{kInf, false, "witness exists although Q = inf"};
                  return Outcome::skip("support not contained: Q = inf, no witness");
                }
                if (!x || !y) return Outcome{kInf, false, "finite Q without witness"};
                const double g = mat_pow(pair.phi(), (params.alpha() - 1.0) / (2.0 * params.z())).max_eigenvalue();
                const double lhs_scale = std::max(mat_pow(pair.psi(), params.alpha() / params.z()).max_eigenvalue(),
                                                  g * g * x->matrix.max_abs());
                const double v = std::max({equal(x->norm_power, y->norm_power), equal(x->norm_power, q.value()),
                                           x->residual / lhs_scale});
                return Outcome{v, false, {}};
              }};
}

}  // namespace

void add_divergence_properties(std::vector<Property>& out) {
  out.push_back(diagonal_oracle());
  out.push_back(specialization(true));
  out.push_back(specialization(false));
  out.push_back(q_self());
  out.push_back(identity_witness_norms());
}

// ---- derived relations ----------------------------------------------------

namespace {

Property order_axiom() {
  return {.name = "order-axiom",
          .group = "derived",
          .clause = "z ≥ |α − 1|: ψ ≤ φ gives D ≤ 0 and ψ ≥ φ gives D ≥ 0",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = any_alpha(ctx.rng);
                const PsdElement big = any_state(ctx.rng, ctx.dim);
                const Matrix small = below(ctx.rng, big);
                const bool psi_below = ctx.trial % 2 == 0;
                Instance inst;
                inst.set("psi", psi_below ? small : big.matrix()).set("phi", psi_below ? big.matrix() : small);
                return inst.set("alpha", alpha).set("z", z_from(ctx.rng, alpha, std::abs(alpha - 1.0))).set("psi_below", psi_below ? 1.0 : 0.0);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                if (pair.psi().is_zero()) return Outcome::skip("psi = 0");
                const double d = d_alpha_z(pair, get_params(inst));
                const bool psi_below = inst.scalar("psi_below") != 0.0;
                return Outcome{psi_below ? d : -d, false, "D = " + std::to_string(d)};
              }};
}

Property tensor_product() {
  return {.name = "tensor",
          .group = "derived",
          .clause = "Q(ψ₁⊗ψ₂‖φ₁⊗φ₂) = Q(ψ₁‖φ₁) Q(ψ₂‖φ₂) for α < 1, finite factors, or z ≥ max{α−1, α/2}",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = any_alpha(ctx.rng);
                const std::size_t n1 = std::min<std::size_t>(ctx.dim, 3);
                const auto n2 = static_cast<std::size_t>(uniform(ctx.rng, 1.0, 4.0));
                const StatePair a = any_pair(ctx.rng, n1, alpha);
                const StatePair b = any_pair(ctx.rng, n2, alpha);
                double z = z_any(ctx.rng, alpha);
                if (alpha > 1.0) {
                  const bool finite = q_alpha_z(a, DivergenceParams(alpha, z)).is_finite() &&
                                      q_alpha_z(b, DivergenceParams(alpha, z)).is_finite();
                  if (!finite) z = z_from(ctx.rng, alpha, std::max(alpha - 1.0, alpha / 2.0));
                }
                Instance inst;
                put_pair(inst, a, "psi1", "phi1");
                put_pair(inst, b, "psi2", "phi2");
                return inst.set("alpha", alpha).set("z", z);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair a = get_pair(inst, "psi1", "phi1");
                const StatePair b = get_pair(inst, "psi2", "phi2");
                const DivergenceParams params = get_params(inst);
                const auto qa = q_alpha_z(a, params);
                const auto qb = q_alpha_z(b, params);
                const StatePair ab = tensor(a, b);
                return compare_equal(q_alpha_z(ab, params), qa * qb, natural_scale(ab, params.alpha()));
              }};
}

Property generalized_mean() {
  return {.name = "generalized-mean",
          .group = "derived",
          .clause = "α < 1: D of a direct sum is the g-mean of the parts, g(t) = exp((α−1)t)",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                const auto n2 = static_cast<std::size_t>(uniform(ctx.rng, 1.0, 4.0));
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim), "psi1", "phi1");
                put_pair(inst, pair_below(ctx.rng, n2), "psi2", "phi2");
                const double alpha = alpha_below(ctx.rng);
                return inst.set("alpha", alpha).set("z", z_any(ctx.rng, alpha));
              },
          .evaluate =
              [](const Instance& inst) {
                const auto r = generalized_mean_check(get_pair(inst, "psi1", "phi1"), get_pair(inst, "psi2", "phi2"),
                                                      get_params(inst));
                if (r.skipped) return Outcome::skip("infinite D or zero psi");
                return Outcome{equal(r.lhs, r.rhs), false, {}};
              }};
}

Property variational_equality() {
  return {.name = "variational-equality/lt1",
          .group = "derived",
          .clause = "α < 1, z ≥ max{α, 1−α}, faithful states: the closed-form witness attains Q",
          .tolerance = Tolerance::fixed(1e-7),
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                Instance inst;
                inst.set("psi", faithful_state(ctx.rng, ctx.dim).matrix()).set("phi", faithful_state(ctx.rng, ctx.dim).matrix());
                return inst.set("alpha", alpha).set("z", z_from(ctx.rng, alpha, std::max(alpha, 1.0 - alpha)));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double q = q_alpha_z(pair, params).value();
                const double v = objective_lower(closed_form_witness(pair, params), pair, params);
                return Outcome{equal(v, q), false, {}};
              }};
}

Property variational_search() {
  return {.name = "variational-search/lt1",
          .group = "derived",
          .clause = "α < 1: numerical minimization of the variational objective never goes below Q",
          .tolerance = Tolerance::fixed(1e-6),
          .trial_cap = 200,
          .generate =
              [](TrialContext& ctx) {
                const double alpha = alpha_below(ctx.rng);
                Instance inst;
                put_pair(inst, {faithful_state(ctx.rng, ctx.dim), faithful_state(ctx.rng, ctx.dim)});
                inst.set("alpha", alpha).set("z", z_from(ctx.rng, alpha, std::max(alpha, 1.0 - alpha)));
                return inst.set("opt_seed", static_cast<double>(ctx.rng() >> 11));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                OptimizerOptions opts;
                opts.budget = 40;
                opts.start = OptimizerOptions::Start::random;
                opts.seed = static_cast<std::uint64_t>(inst.scalar("opt_seed"));
                const double q = q_alpha_z(pair, params).value();
                const auto probe = minimize_lower(pair, params, opts);
                return Outcome{leq(q, probe.objective_value), false,
                               "gap " + std::to_string((probe.objective_value - q) / q)};
              }};
}

Property petz_sandwich_order() {
  return {.name = "petz-sandwich-order",
          .group = "derived",
          .clause = "α < 1: the sandwiched divergence is at most the Petz divergence",
          .tolerance = Tolerance::relative(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_below(ctx.rng, ctx.dim));
                return inst.set("alpha", alpha_below(ctx.rng));
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const double alpha = inst.scalar("alpha");
                const auto petz = petz_q(pair, alpha);
                const auto sandwiched = sandwiched_q(pair, alpha);
                return Outcome{leq(petz, sandwiched, natural_scale(pair, alpha)), false, describe(petz, sandwiched)};
              }};
}

}  // namespace

void add_derived_properties(std::vector<Property>& out) {
  out.push_back(order_axiom());
  out.push_back(tensor_product());
  out.push_back(generalized_mean());
  out.push_back(variational_equality());
  out.push_back(variational_search());
  out.push_back(petz_sandwich_order());
}

}  // namespace azr::verify::detail
