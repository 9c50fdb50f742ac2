#include "common.hpp"

namespace azr::verify::detail {

namespace {

constexpr double kExponents[] = {0.5, 1.0, 1.5, 2.0, 3.0, 4.0};

double pick(Rng& rng, std::span<const double> values) {
  const auto i = static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(values.size())));
  return values[std::min(i, values.size() - 1)];
}

/// Gaussian matrix, rank-deficient one time in three.
Matrix general(Rng& rng, std::size_t n) {
  if (uniform(rng, 0.0, 3.0) < 1.0 && n > 1) {
    const auto k = static_cast<std::size_t>(uniform(rng, 1.0, static_cast<double>(n)));
    return random_gaussian(rng, n, k) * random_gaussian(rng, k, n);
  }
  return random_gaussian(rng, n, n);
}

Property holder() {
  return {.name = "holder",
          .group = "lemmas",
          .clause = "Hölder: ‖ab‖_r ≤ ‖a‖_p ‖b‖_q for 1/r = 1/p + 1/q",
          .tolerance = Tolerance::absolute(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                const double p = pick(ctx.rng, kExponents);
                const double q = pick(ctx.rng, kExponents);
                inst.set("a", general(ctx.rng, ctx.dim)).set("b", general(ctx.rng, ctx.dim));
                return inst.set("p", p).set("q", q).set("r", 1.0 / (1.0 / p + 1.0 / q));
              },
          .evaluate =
              [](const Instance& inst) {
                const Matrix& a = inst.matrix("a");
                const Matrix& b = inst.matrix("b");
                const double lhs = schatten_norm(a * b, inst.scalar("r"));
                const double rhs = schatten_norm(a, inst.scalar("p")) * schatten_norm(b, inst.scalar("q"));
                return Outcome{leq(lhs, rhs), false, {}};
              }};
}

Property norm_order() {
  return {.name = "norm-order",
          .group = "lemmas",
          .clause = "0 ≤ a ≤ b implies ‖a‖_p ≤ ‖b‖_p for 0 < p ≤ ∞",
          .tolerance = Tolerance::absolute(),
          .generate =
              [](TrialContext& ctx) {
                static constexpr double ps[] = {0.25, 0.5, 1.0, 2.0, 3.0, kInf};
                const PsdElement b = any_state(ctx.rng, ctx.dim);
                Instance inst;
                inst.set("a", below(ctx.rng, b)).set("b", b.matrix());
                return inst.set("p", pick(ctx.rng, ps));
              },
          .evaluate =
              [](const Instance& inst) {
                const double p = inst.scalar("p");
                return Outcome{leq(schatten_norm(inst.matrix("a"), p), schatten_norm(inst.matrix("b"), p)), false, {}};
              }};
}

Property trace_equality() {
  return {.name = "trace-equality",
          .group = "lemmas",
          .clause = "tr((a^{1/2} b a^{1/2})^α) = tr((b^{1/2} a b^{1/2})^α) for a, b ≥ 0",
          .tolerance = Tolerance::absolute(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                inst.set("a", any_state(ctx.rng, ctx.dim).matrix()).set("b", any_state(ctx.rng, ctx.dim).matrix());
                return inst.set("alpha", uniform(ctx.rng, 0.1, 3.0));
              },
          .evaluate =
              [](const Instance& inst) {
                const PsdElement a = inst.state("a");
                const PsdElement b = inst.state("b");
                const double alpha = inst.scalar("alpha");
                const double ab = sandwich_trace_power(a, 0.5, mat_pow(b, 0.5).matrix(), alpha);
                const double ba = sandwich_trace_power(b, 0.5, mat_pow(a, 0.5).matrix(), alpha);
                return Outcome{equal(ab, ba), false, {}};
              }};
}

Property quasi_norm_subadditivity() {
  return {.name = "quasi-norm-subadditivity",
          .group = "lemmas",
          .clause = "‖a + b‖_p^p ≤ ‖a‖_p^p + ‖b‖_p^p for 0 < p ≤ 1",
          .tolerance = Tolerance::absolute(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                inst.set("a", general(ctx.rng, ctx.dim)).set("b", general(ctx.rng, ctx.dim));
                return inst.set("p", uniform(ctx.rng, 0.1, 1.0));
              },
          .evaluate =
              [](const Instance& inst) {
                const double p = inst.scalar("p");
                const Matrix& a = inst.matrix("a");
                const Matrix& b = inst.matrix("b");
                const double lhs = schatten_power_sum(a + b, p);
                return Outcome{leq(lhs, schatten_power_sum(a, p) + schatten_power_sum(b, p)), false, {}};
              }};
}

Property powers_stormer() {
  return {.name = "powers-stormer",
          .group = "lemmas",
          .clause = "‖a^θ − b^θ‖_{p/θ} ≤ ‖a − b‖_p^θ for 0 < θ ≤ 1, θ ≤ p ≤ ∞",
          .tolerance = Tolerance::absolute(),
          .generate =
              [](TrialContext& ctx) {
                const double theta = uniform(ctx.rng, 0.05, 1.0);
                const double p = uniform(ctx.rng, 0.0, 8.0) < 1.0 ? kInf : uniform(ctx.rng, theta, 4.0);
                Instance inst;
                inst.set("a", any_state(ctx.rng, ctx.dim).matrix()).set("b", any_state(ctx.rng, ctx.dim).matrix());
                return inst.set("theta", theta).set("p", p);
              },
          .evaluate =
              [](const Instance& inst) {
                const PsdElement a = inst.state("a");
                const PsdElement b = inst.state("b");
                const double theta = inst.scalar("theta");
                const double p = inst.scalar("p");
                const double lhs = schatten_norm(mat_pow(a, theta).matrix() - mat_pow(b, theta).matrix(), p / theta);
                const double rhs = std::pow(schatten_norm(a.matrix() - b.matrix(), p), theta);
                return Outcome{leq(lhs, rhs), false, {}};
              }};
}

/// d(δ) = ‖(h + δK)^{1/p} − h^{1/p}‖_p along δ = 10^{-k}.
std::vector<double> continuity_profile(const PsdElement& h, const PsdElement& k, double p, int steps) {
  const Matrix base = mat_pow(h, 1.0 / p).matrix();
  std::vector<double> d;
  for (int i = 0; i < steps; ++i) {
    const double delta = std::pow(10.0, -i);
    const PsdElement hn = PsdElement::from_product(h.matrix() + k.matrix() * delta);
    d.push_back(schatten_norm(mat_pow(hn, 1.0 / p).matrix() - base, p));
  }
  return d;
}

Property norm_continuity() {
  return {
      .name = "norm-continuity",
      .group = "lemmas",
      .clause = "‖h_n − h‖_1 → 0 implies ‖h_n^{1/p} − h^{1/p}‖_p → 0",
      .tolerance = Tolerance::absolute(),
      .evidence = "checked along h + δK, δ = 1 … 1e-8: the bound ‖δK‖_1^{1/p} for p ≥ 1, a linear rate "
                  "fitted at δ = 1e-2 (slack 10) for p < 1",
      .generate =
          [](TrialContext& ctx) {
            Instance inst;
            inst.set("h", any_state(ctx.rng, ctx.dim).matrix()).set("k", any_state(ctx.rng, ctx.dim).matrix());
            return inst.set("p", uniform(ctx.rng, 0.0, 1.0) < 0.5 ? uniform(ctx.rng, 0.2, 1.0) : uniform(ctx.rng, 1.0, 4.0));
          },
      .evaluate =
          [](const Instance& inst) {
            const PsdElement h = inst.state("h");
            const PsdElement k = inst.state("k");
            const double p = inst.scalar("p");
            const auto d = continuity_profile(h, k, p, 9);
            double worst = -kInf;
            if (p >= 1.0) {
              for (std::size_t i = 0; i < d.size(); ++i) {
                const double bound = std::pow(std::pow(10.0, -static_cast<double>(i)) * k.trace(), 1.0 / p);
                worst = std::max(worst, leq(d[i], bound));
              }
            } else {
              const double rate = 10.0 * d[2] / 1e-2;
              for (std::size_t i = 3; i < d.size(); ++i) {
                const double bound = rate * std::pow(10.0, -static_cast<double>(i));
                worst = std::max(worst, leq(d[i], bound));
              }
            }
            return Outcome{worst, false, {}};
          }};
}

Property alt_inequality() {
  return {.name = "alt-inequality",
          .group = "lemmas",
          .clause = "tr((B^{1/2} A B^{1/2})^{rq}) ≤ tr((B^{r/2} A^r B^{r/2})^q) for r ≥ 1, q > 0",
          .tolerance = Tolerance::absolute(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                inst.set("a", any_state(ctx.rng, ctx.dim).matrix()).set("b", any_state(ctx.rng, ctx.dim).matrix());
                return inst.set("r", uniform(ctx.rng, 1.0, 3.0)).set("q", uniform(ctx.rng, 0.2, 2.0));
              },
          .evaluate =
              [](const Instance& inst) {
                const PsdElement a = inst.state("a");
                const PsdElement b = inst.state("b");
                const double r = inst.scalar("r");
                const double q = inst.scalar("q");
                const double lhs = sandwich_trace_power(a, 0.5, mat_pow(b, 0.5).matrix(), r * q);
                const double rhs = sandwich_trace_power(a, r / 2.0, mat_pow(b, r / 2.0).matrix(), q);
                return Outcome{leq(lhs, rhs), false, {}};
              }};
}

Property singular_value_symmetry() {
  return {.name = "singular-value-symmetry",
          .group = "lemmas",
          .clause = "σ(ab) = σ(ba) for Hermitian a, b",
          .tolerance = Tolerance::absolute(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                return inst.set("a", random_hermitian(ctx.rng, ctx.dim)).set("b", random_hermitian(ctx.rng, ctx.dim));
              },
          .evaluate =
              [](const Instance& inst) {
                const Matrix& a = inst.matrix("a");
                const Matrix& b = inst.matrix("b");
                const auto s1 = singular_values(a * b);
                const auto s2 = singular_values(b * a);
                double worst = 0.0;
                for (std::size_t i = 0; i < s1.size(); ++i) worst = std::max(worst, std::abs(s1[i] - s2[i]));
                return Outcome{worst / std::max(s1.front(), 1e-300), false, {}};
              }};
}

Property holder_equality() {
  return {.name = "holder-equality",
          .group = "lemmas",
          .clause = "equality in Hölder (r ≥ 1) exactly when x^p and y^q are proportional",
          .tolerance = Tolerance::fixed(1e-6),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                const double p = uniform(ctx.rng, 2.0, 5.0);
                const double q = uniform(ctx.rng, 2.0, 5.0);
                const PsdElement y = any_state(ctx.rng, ctx.dim);
                const bool proportional = ctx.trial % 2 == 0;
                const double lambda = std::exp(uniform(ctx.rng, std::log(0.1), std::log(10.0)));
                Matrix x;
                if (proportional) {
                  x = mat_pow(mat_pow(y, q).scaled(lambda), 1.0 / p).matrix();
                } else {
                  x = any_state(ctx.rng, ctx.dim).matrix();
                }
                inst.set("x", x).set("y", y.matrix()).set("p", p).set("q", q).set("lambda", lambda);
                return inst.set("proportional", proportional ? 1.0 : 0.0);
              },
          .evaluate = [](const Instance& inst) {
            const double p = inst.scalar("p");
            const double q = inst.scalar("q");
            const double r = 1.0 / (1.0 / p + 1.0 / q);
            const PsdElement x = inst.state("x");
            const PsdElement y = inst.state("y");
            const HolderResult res = holder_equality_check(x, y, p, q, r);
            const auto* prop = std::get_if<HolderProportional>(&res);
            if (inst.scalar("proportional") != 0.0) {
              if (!prop) return Outcome{1.0, false, "constructed proportional pair not detected"};
              const double want = prop->oriented ? inst.scalar("lambda") : 1.0 / inst.scalar("lambda");
              return Outcome{equal(prop->lambda, want), false, {}};
            }
            const double gap = holder_gap(x, y, p, q, r);
            const double scale = schatten_norm(x.matrix(), p) * schatten_norm(y.matrix(), q);
            if (prop && gap > 2.0 * HolderOptions{}.eq_tolerance * scale)
              return Outcome{1.0, false, "strict pair classified as proportional"};
            return Outcome{0.0, false, {}};
          }};
}

}  // namespace

void add_lemma_properties(std::vector<Property>& out) {
  out.push_back(holder());
  out.push_back(norm_order());
  out.push_back(trace_equality());
  out.push_back(quasi_norm_subadditivity());
  out.push_back(powers_stormer());
  out.push_back(norm_continuity());
  out.push_back(alt_inequality());
  out.push_back(singular_value_symmetry());
  out.push_back(holder_equality());
}

}  // namespace azr::verify::detail
