#include <limits>

#include "azr/variational.hpp"
#include "common.hpp"

namespace azr::verify::detail {

namespace {

constexpr const char* kGroup = "explore";
constexpr int kPerCell = 60;

const std::vector<double> kDefaultAlphas = {1.5, 2.0, 3.0};
const std::vector<double> kDefaultMixedAlphas = {0.3, 0.7, 1.5, 2.0, 3.0};
const std::vector<double> kDefaultZ = {0.5, 1.0, 1.5, 2.0, 3.0};

std::vector<double> alphas(const SuiteConfig& config, bool above_only) {
  if (config.alpha_grid.empty()) return above_only ? kDefaultAlphas : kDefaultMixedAlphas;
  std::vector<double> out;
  for (double a : config.alpha_grid)
    if (!above_only || a > 1.0) out.push_back(a);
  return out;
}

const std::vector<double>& zs(const SuiteConfig& config) { return config.z_grid.empty() ? kDefaultZ : config.z_grid; }

/// α × z grid; flags(α, z) gives {expected, theorem_regime}.
template <class Flags>
std::vector<Cell> grid(const SuiteConfig& config, bool above_only, Flags flags) {
  std::vector<Cell> out;
  for (double a : alphas(config, above_only))
    for (double z : zs(config)) {
      const auto [expected, regime] = flags(a, z);
      out.push_back(Cell{{{"alpha", a}, {"z", z}}, expected, regime});
    }
  return out;
}

Instance with_cell(Instance inst, const TrialContext& ctx) {
  return inst.set("alpha", ctx.cell->get("alpha")).set("z", ctx.cell->get("z"));
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

Property explore_lsc() {
  return {.name = "explore/lsc",
          .group = kGroup,
          .clause = "α > 1, any z: is Q jointly lower semicontinuous?",
          .kind = Kind::exploration,
          .tolerance = Tolerance::fixed(0.0),
          .trial_cap = kPerCell,
          .evidence = "sequence-based, as for the proved clause",
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim));
                inst.set("k_psi", random_state(ctx.rng, ctx.dim).matrix());
                inst.set("k_phi", random_state(ctx.rng, ctx.dim).matrix());
                return with_cell(inst, ctx);
              },
          .evaluate = [](const Instance& inst) { return lsc_outcome(inst); },
          .cells = [](const SuiteConfig& c) {
            return grid(c, true, [](double a, double z) { return std::pair{true, z >= a / 2.0}; });
          }};
}

Property explore_variational() {
  return {.name = "explore/variational",
          .group = kGroup,
          .clause = "α > 1: is the supremum of the variational objective equal to Q, and attained?",
          .kind = Kind::exploration,
          .tolerance = Tolerance::fixed(1e-6),
          .trial_cap = 8,
          .evidence = "closed-form candidate a₀ polished by gradient ascent; violation is the relative gap to Q",
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, StatePair(tame_state(ctx.rng, ctx.dim), tame_state(ctx.rng, ctx.dim)));
                return with_cell(inst, ctx);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const double q = q_alpha_z(pair, params).value();
                const PsdElement a0 = closed_form_witness(pair, params);
                const double floor = static_cast<double>(a0.dim()) * std::numeric_limits<double>::epsilon();
                if (a0.min_eigenvalue() <= floor * a0.max_eigenvalue())
                  return Outcome::skip("closed form numerically singular, condition beyond 1/eps");
                const double closed = objective_upper(a0, pair, params);
                OptimizerOptions opts;
                opts.budget = 150;
                opts.start = OptimizerOptions::Start::closed_form;
                const VariationalProbe probe = maximize_upper(pair, params, opts);
                const double best = std::max(closed, probe.objective_value);
                return Outcome{(q - best) / q, false,
                               "closed form gap " + std::to_string((q - closed) / q)};
              },
          .cells = [](const SuiteConfig& c) {
            return grid(c, true, [](double a, double z) { return std::pair{true, near(z, a)}; });
          }};
}

Property explore_positivity_equality() {
  return {.name = "explore/positivity-equality",
          .group = kGroup,
          .clause = "does Q(ψ‖φ) = ψ(1)^α φ(1)^{1−α} force ψ ∝ φ for every z?",
          .kind = Kind::exploration,
          .tolerance = Tolerance::fixed(0.0),
          .trial_cap = kPerCell,
          .evidence = "non-proportional pairs must keep a relative gap above 1e-10",
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                const double alpha = ctx.cell->get("alpha");
                put_pair(inst, alpha > 1.0 ? pair_above(ctx.rng, ctx.dim) : pair_below(ctx.rng, ctx.dim));
                return with_cell(inst, ctx);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const Matrix diff = pair.psi().matrix() * (1.0 / pair.psi_weight()) -
                                    pair.phi().matrix() * (1.0 / pair.phi_weight());
                if (diff.max_abs() < 1e-8) return Outcome::skip("proportional pair");
                const auto q = q_alpha_z(pair, params);
                if (q.is_infinite()) return Outcome{-1.0, false, "Q = inf"};
                const double scale = natural_scale(pair, params.alpha());
                const double gap = std::abs(q.value() - scale) / scale;
                return Outcome{1e-10 - gap, false, "gap " + std::to_string(gap)};
              },
          .cells = [](const SuiteConfig& c) {
            return grid(c, false, [](double a, double z) {
              const bool proved = a < 1.0 ? z >= 0.5 : (near(z, 1.0) || z >= a / 2.0);
              return std::pair{true, proved};
            });
          }};
}

Property explore_dpi() {
  return {.name = "explore/dpi",
          .group = kGroup,
          .clause = "α > 1: Q(ψ∘γ‖φ∘γ) ≤ Q(ψ‖φ) for unital CP γ?",
          .kind = Kind::exploration,
          .tolerance = Tolerance::relative(),
          .trial_cap = kPerCell,
          .evidence = "cells outside max{α−1, α/2} ≤ z ≤ α are recorded but not expected to hold",
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                const Channel ch = random_unital_map(ctx.rng, ctx.dim, false);
                put_pair(inst, pair_above(ctx.rng, ch.out_dim()));
                inst.set_channel(ch);
                return with_cell(inst, ctx);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const Channel& ch = inst.channel();
                const StatePair pulled(ch.apply_predual(pair.psi()), ch.apply_predual(pair.phi()));
                const auto after = q_alpha_z(pulled, params);
                const auto before = q_alpha_z(pair, params);
                return Outcome{leq(after, before, natural_scale(pair, params.alpha())), false, describe(after, before)};
              },
          .cells = [](const SuiteConfig& c) {
            return grid(c, true, [](double a, double z) {
              return std::pair{std::max(a - 1.0, a / 2.0) <= z + 1e-12 && z <= a + 1e-12, false};
            });
          }};
}

Property explore_tensor() {
  return {.name = "explore/tensor",
          .group = kGroup,
          .clause = "is Q multiplicative under tensor products for every (α, z), including infinite factors?",
          .kind = Kind::exploration,
          .tolerance = Tolerance::relative(),
          .trial_cap = kPerCell,
          .generate =
              [](TrialContext& ctx) {
                const double alpha = ctx.cell->get("alpha");
                const auto n1 = std::min<std::size_t>(ctx.dim, 3);
                const auto n2 = static_cast<std::size_t>(uniform(ctx.rng, 1.0, 4.0));
                const auto draw = [&](std::size_t n) {
                  return alpha > 1.0 ? pair_above(ctx.rng, n) : pair_below(ctx.rng, n);
                };
                Instance inst;
                put_pair(inst, draw(n1), "psi1", "phi1");
                put_pair(inst, draw(n2), "psi2", "phi2");
                return with_cell(inst, ctx);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair a = get_pair(inst, "psi1", "phi1");
                const StatePair b = get_pair(inst, "psi2", "phi2");
                const DivergenceParams params = get_params(inst);
                const StatePair ab = tensor(a, b);
                const auto lhs = q_alpha_z(ab, params);
                const auto rhs = q_alpha_z(a, params) * q_alpha_z(b, params);
                return Outcome{equal(lhs, rhs, natural_scale(ab, params.alpha())), false, describe(lhs, rhs)};
              },
          .cells = [](const SuiteConfig& c) {
            return grid(c, false, [](double a, double z) {
              return std::pair{true, a < 1.0 || z >= std::max(a - 1.0, a / 2.0)};
            });
          }};
}

Property explore_z_monotone() {
  return {.name = "explore/z-monotone",
          .group = kGroup,
          .clause = "α > 1: does z ≤ z' imply Q_{α,z} ≥ Q_{α,z'}?",
          .kind = Kind::exploration,
          .tolerance = Tolerance::relative(),
          .trial_cap = kPerCell,
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                put_pair(inst, pair_above(ctx.rng, ctx.dim));
                inst.set("z2", ctx.cell->get("z") + uniform(ctx.rng, 0.0, 3.0));
                return with_cell(inst, ctx);
              },
          .evaluate =
              [](const Instance& inst) {
                const StatePair pair = get_pair(inst);
                const DivergenceParams params = get_params(inst);
                const auto q1 = q_alpha_z(pair, params);
                const auto q2 = q_alpha_z(pair, DivergenceParams(params.alpha(), inst.scalar("z2")));
                return Outcome{leq(q2, q1, natural_scale(pair, params.alpha())), false, describe(q2, q1)};
              },
          .cells = [](const SuiteConfig& c) {
            return grid(c, true, [](double, double) { return std::pair{true, false}; });
          }};
}

Property explore_question_inequality() {
  return {.name = "explore/question-ineq",
          .group = kGroup,
          .clause = "‖h_ψ^{1/2p} γ(b) h_ψ^{1/2p}‖_p ≥ ‖h_{ψ∘γ}^{1/2p} b h_{ψ∘γ}^{1/2p}‖_p for b ≥ 0 and p ∈ [1/2, 1]?",
          .kind = Kind::exploration,
          .tolerance = Tolerance::relative(),
          .trial_cap = kPerCell,
          .evidence = "unital CP γ; cells with p < 1/2 are recorded but not expected",
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                const Channel ch = random_unital_map(ctx.rng, ctx.dim, false);
                inst.set("psi", any_state(ctx.rng, ch.out_dim()).matrix());
                inst.set("b", any_state(ctx.rng, ch.in_dim()).matrix());
                inst.set_channel(ch);
                inst.set("p", ctx.cell->get("p"));
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const Channel& ch = inst.channel();
                const PsdElement psi = inst.state("psi");
                const PsdElement pulled = ch.apply_predual(psi);
                const double p = inst.scalar("p");
                const Matrix s = support_projection(pulled);
                const Matrix b = s * inst.matrix("b") * s;
                const Matrix hp = mat_pow(psi, 0.5 / p).matrix();
                const Matrix hq = mat_pow(pulled, 0.5 / p).matrix();
                const double lhs = schatten_norm(hp * ch.apply_dual(b) * hp, p);
                const double rhs = schatten_norm(hq * b * hq, p);
                return Outcome{leq(rhs, lhs, 1e-300), false, {}};
              },
          .cells = [](const SuiteConfig&) {
            std::vector<Cell> out;
            for (double p : {0.25, 0.4, 0.5, 0.75, 1.0}) out.push_back(Cell{{{"p", p}}, p >= 0.5, false});
            return out;
          }};
}

}  // namespace

void add_exploration_properties(std::vector<Property>& out) {
  out.push_back(explore_lsc());
  out.push_back(explore_variational());
  out.push_back(explore_positivity_equality());
  out.push_back(explore_dpi());
  out.push_back(explore_tensor());
  out.push_back(explore_z_monotone());
  out.push_back(explore_question_inequality());
}

}  // namespace azr::verify::detail
