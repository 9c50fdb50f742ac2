#include "common.hpp"

namespace azr::verify::detail {

namespace {

constexpr const char* kGroup = "channels";

Tolerance channel_tolerance() { return Tolerance::fixed(1e-8); }

/// p·a·p for the projection p.
Matrix compress(const Matrix& p, const Matrix& a) { return p * a * p; }

double rel(double diff, double scale) { return diff / std::max(scale, 1e-300); }

Instance map_and_state(TrialContext& ctx, bool allow_non_cp, bool faithful) {
  Instance inst;
  const Channel ch = random_unital_map(ctx.rng, ctx.dim, allow_non_cp);
  inst.set("phi", (faithful ? faithful_state(ctx.rng, ch.out_dim()) : any_state(ctx.rng, ch.out_dim())).matrix());
  inst.set_channel(ch);
  return inst;
}

Property recovery_identity() {
  return {.name = "channels/recovery-identity",
          .group = kGroup,
          .clause = "h_{φ∘γ}^{1/2} γ*_φ(a) h_{φ∘γ}^{1/2} = γ_*(h_φ^{1/2} a h_φ^{1/2}) for a ∈ s(φ)Ms(φ)",
          .tolerance = channel_tolerance(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst = map_and_state(ctx, true, false);
                const std::size_t n = inst.channel().out_dim();
                inst.set("a", random_gaussian(ctx.rng, n, n));
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const Channel& ch = inst.channel();
                const PsdElement phi = inst.state("phi");
                const RecoveryMap r = petz_recovery(ch, phi);
                const Matrix a = compress(r.domain_support, inst.matrix("a"));
                return Outcome{rel(recovery_identity_residual(ch, r, a), phi.max_eigenvalue() * a.max_abs()), false,
                               {}};
              }};
}

Property recovery_fixed_point() {
  return {.name = "channels/recovery-fixed-point",
          .group = kGroup,
          .clause = "φ∘γ∘γ*_φ = φ on s(φ)Ms(φ), and γ*_φ(1) = s(φ∘γ)",
          .tolerance = channel_tolerance(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst = map_and_state(ctx, true, false);
                const std::size_t n = inst.channel().out_dim();
                inst.set("a", random_gaussian(ctx.rng, n, n));
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const Channel& ch = inst.channel();
                const PsdElement phi = inst.state("phi");
                const RecoveryMap r = petz_recovery(ch, phi);
                const Matrix a = compress(r.domain_support, inst.matrix("a"));
                const Complex lhs = (r.phi_gamma.matrix() * r.apply(a)).trace();
                const Complex rhs = (phi.matrix() * a).trace();
                const double recovered = rel(std::abs(lhs - rhs), phi.trace() * a.max_abs());
                const Matrix unit = r.apply(Matrix::identity(ch.out_dim())) - r.range_support;
                return Outcome{std::max(recovered, unit.max_abs()), false, {}};
              }};
}

Property recovery_double_dual() {
  return {.name = "channels/recovery-double-dual",
          .group = kGroup,
          .clause = "(γ*_φ)*_{φ∘γ} = s(φ)γ(·)s(φ) on s(φ∘γ)Ns(φ∘γ)",
          .tolerance = channel_tolerance(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst = map_and_state(ctx, true, false);
                const std::size_t n = inst.channel().in_dim();
                inst.set("b", random_gaussian(ctx.rng, n, n));
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const Channel& ch = inst.channel();
                const PsdElement phi = inst.state("phi");
                const RecoveryMap r = petz_recovery(ch, phi);
                const RecoveryMap rr = petz_recovery(r.map, r.phi_gamma);
                const Matrix b = compress(r.range_support, inst.matrix("b"));
                const Matrix diff = rr.apply(b) - compress(r.domain_support, ch.apply_dual(b));
                return Outcome{rel(diff.max_abs(), b.max_abs()), false, {}};
              }};
}

Property sandwich_contraction() {
  return {.name = "channels/sandwich-contraction",
          .group = kGroup,
          .clause = "‖h_φ^{1/2p} γ(b) h_φ^{1/2p}‖_p ≤ ‖h_{φ∘γ}^{1/2p} b h_{φ∘γ}^{1/2p}‖_p for p ≥ 1",
          .tolerance = channel_tolerance(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst = map_and_state(ctx, false, false);
                const std::size_t n = inst.channel().in_dim();
                inst.set("b", random_gaussian(ctx.rng, n, n)).set("p", uniform(ctx.rng, 1.0, 4.0));
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const InequalityCheck c =
                    check_sandwich_contraction(inst.channel(), inst.state("phi"), inst.matrix("b"), inst.scalar("p"));
                return Outcome{leq(c.lhs, c.rhs, 1e-300), false, {}};
              }};
}

Property carlen_zhang() {
  return {.name = "channels/carlen-zhang",
          .group = kGroup,
          .clause = "Tr((Φ(B)* A^{1/p} Φ(B))^p) ≤ Tr((B* Φ*(A)^{1/p} B)^p) for unital CP Φ, A > 0, p ≥ 1",
          .tolerance = channel_tolerance(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                const Channel ch = random_unital_map(ctx.rng, ctx.dim, false);
                inst.set_channel(ch);
                inst.set("A", faithful_state(ctx.rng, ch.out_dim()).matrix());
                inst.set("B", random_gaussian(ctx.rng, ch.in_dim(), ch.in_dim()));
                inst.set("p", uniform(ctx.rng, 1.0, 4.0));
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const InequalityCheck c =
                    check_carlen_zhang(inst.channel(), inst.state("A"), inst.matrix("B"), inst.scalar("p"));
                return Outcome{leq(c.lhs, c.rhs, 1e-300), false, {}};
              }};
}

Property choi_inequality() {
  return {.name = "channels/choi-inequality",
          .group = kGroup,
          .clause = "γ(b⁻¹) ≥ γ(b)⁻¹ for unital positive γ and b > 0",
          .tolerance = channel_tolerance(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst;
                const Channel ch = random_unital_map(ctx.rng, ctx.dim, true);
                inst.set_channel(ch);
                const std::size_t n = ch.in_dim();
                inst.set("b", random_state(ctx.rng, n).matrix() + Matrix::identity(n) * 0.05);
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const PsdElement b = inst.state("b");
                const double gap = choi_gap(inst.channel(), b);
                return Outcome{-gap / (1.0 / b.min_eigenvalue()), false, {}};
              }};
}

Property predual_duality() {
  return {.name = "channels/predual-duality",
          .group = kGroup,
          .clause = "tr(γ_*(h) b) = tr(h γ(b)) and tr γ_*(h) = tr h",
          .tolerance = channel_tolerance(),
          .generate =
              [](TrialContext& ctx) {
                Instance inst = map_and_state(ctx, true, false);
                const std::size_t n = inst.channel().in_dim();
                inst.set("b", random_gaussian(ctx.rng, n, n));
                return inst;
              },
          .evaluate =
              [](const Instance& inst) {
                const Channel& ch = inst.channel();
                const PsdElement h = inst.state("phi");
                const Matrix& b = inst.matrix("b");
                const PsdElement pulled = ch.apply_predual(h);
                const Complex lhs = (pulled.matrix() * b).trace();
                const Complex rhs = (h.matrix() * ch.apply_dual(b)).trace();
                const double pairing = rel(std::abs(lhs - rhs), h.trace() * b.max_abs() * static_cast<double>(b.rows()));
                const double trace = rel(std::abs(pulled.trace() - h.trace()), h.trace());
                return Outcome{std::max(pairing, trace), false, {}};
              }};
}

}  // namespace

void add_channel_properties(std::vector<Property>& out) {
  out.push_back(recovery_identity());
  out.push_back(recovery_fixed_point());
  out.push_back(recovery_double_dual());
  out.push_back(sandwich_contraction());
  out.push_back(carlen_zhang());
  out.push_back(choi_inequality());
  out.push_back(predual_duality());
}

}  // namespace azr::verify::detail
