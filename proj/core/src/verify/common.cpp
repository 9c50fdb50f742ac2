#include "common.hpp"

#include <sstream>

namespace azr::verify::detail {

PsdElement any_state(Rng& rng, std::size_t n) { return random_state_mixed_rank(rng, n).scaled(weight(rng)); }

PsdElement faithful_state(Rng& rng, std::size_t n) { return random_state(rng, n).scaled(weight(rng)); }

PsdElement tame_state(Rng& rng, std::size_t n) {
  const double t = uniform(rng, 0.1, 0.6);
  const Matrix m = random_state(rng, n).matrix() * (1.0 - t) + Matrix::identity(n) * (t / static_cast<double>(n));
  return PsdElement::from_product(m).scaled(weight(rng));
}

PsdElement state_in_support(Rng& rng, const PsdElement& phi) {
  const Matrix s = support_projection(phi);
  const Matrix h = s * random_state(rng, phi.dim()).matrix() * s;
  const PsdElement raw = PsdElement::from_product(h);
  const double tr = raw.trace();
  return tr > 0.0 ? raw.scaled(weight(rng) / tr) : raw;
}

Matrix below(Rng& rng, const PsdElement& b) {
  const Matrix root = mat_pow(b, 0.5).matrix();
  return (root * random_contraction(rng, b.dim()).matrix() * root).hermitian_part();
}

StatePair pair_above(Rng& rng, std::size_t n) {
  const PsdElement phi = any_state(rng, n);
  if (uniform(rng, 0.0, 1.0) < 0.75) return {state_in_support(rng, phi), phi};
  return {any_state(rng, n), phi};
}

StatePair pair_below(Rng& rng, std::size_t n) {
  const PsdElement psi = any_state(rng, n);
  return {psi, any_state(rng, n)};
}

Instance& put_pair(Instance& inst, const StatePair& pair, const std::string& psi, const std::string& phi) {
  inst.set(psi, pair.psi().matrix());
  return inst.set(phi, pair.phi().matrix());
}

StatePair get_pair(const Instance& inst, const std::string& psi, const std::string& phi) {
  return {inst.state(psi), inst.state(phi)};
}

DivergenceParams get_params(const Instance& inst) { return {inst.scalar("alpha"), inst.scalar("z")}; }

Channel random_unital_map(Rng& rng, std::size_t n, bool allow_non_cp) {
  const auto seed = static_cast<std::uint64_t>(rng());
  const int pick = static_cast<int>(uniform(rng, 0.0, allow_non_cp ? 7.0 : 6.0));
  switch (pick) {
    case 0:
      return pinching_channel(n);
    case 1:
      return depolarizing_channel(n, uniform(rng, 0.0, 1.0));
    case 2:
      if (n % 2 == 0) return doubling_channel(n / 2);
      return partial_trace_channel(1, n);
    case 3: {
      const std::size_t in = std::max<std::size_t>(1, n / 2);
      if (n % in == 0 && in > 1) return partial_trace_channel(in, n / in);
      return random_channel(n, n, 2, seed);
    }
    case 6:
      return transpose_map(n);
    default: {
      const std::size_t in = 1 + static_cast<std::size_t>(uniform(rng, 1.0, static_cast<double>(n) + 1.0));
      const std::size_t count = (n + in - 1) / in + static_cast<std::size_t>(uniform(rng, 0.0, 3.0));
      return random_channel(in, n, count, seed);
    }
  }
}

double natural_scale(const StatePair& pair, double alpha) {
  const double a = pair.psi_weight();
  const double b = pair.phi_weight();
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return std::pow(a, alpha) * std::pow(b, 1.0 - alpha);
}

namespace {

double scale(double a, double b, double floor) {
  return std::max({std::abs(a), std::abs(b), floor, std::numeric_limits<double>::min()});
}

}  // namespace

double leq(double a, double b, double floor) {
  if (a == b) return 0.0;
  if (b == kInf || a == -kInf) return -1.0;
  if (a == kInf || b == -kInf) return kInf;
  return (a - b) / scale(a, b, floor);
}

double equal(double a, double b, double floor) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return std::abs(a - b) / scale(a, b, floor);
}

double leq(ExtendedNonneg a, ExtendedNonneg b, double floor) {
  if (b.is_infinite()) return -1.0;
  if (a.is_infinite()) return kInf;
  return leq(a.value(), b.value(), floor);
}

double equal(ExtendedNonneg a, ExtendedNonneg b, double floor) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite() ? 0.0 : kInf;
  return equal(a.value(), b.value(), floor);
}

std::string describe(ExtendedNonneg a, ExtendedNonneg b) {
  std::ostringstream os;
  os << a.to_string() << " vs " << b.to_string();
  return os.str();
}

std::vector<ExtendedNonneg> perturbed_profile(const Instance& inst, const DivergenceParams& params) {
  const Matrix& psi = inst.matrix("psi");
  const Matrix& phi = inst.matrix("phi");
  const Matrix& k1 = inst.matrix("k_psi");
  const Matrix& k2 = inst.matrix("k_phi");
  std::vector<ExtendedNonneg> out;
  for (int i = 1; i <= 7; ++i) {
    const double delta = std::pow(10.0, -2.0 * i);
    const StatePair pair(PsdElement::from_product(psi + k1 * delta), PsdElement::from_product(phi + k2 * delta));
    out.push_back(q_alpha_z(pair, params));
  }
  return out;
}

Outcome lsc_outcome(const Instance& inst) {
  const StatePair pair = get_pair(inst);
  const DivergenceParams params = get_params(inst);
  const auto q = q_alpha_z(pair, params);
  const auto profile = perturbed_profile(inst, params);
  if (q.is_infinite()) {
    const double early = profile[1].as_double();
    const double late = profile.back().as_double();
    return Outcome{leq(early, late), false, "Q = inf, profile " + std::to_string(early) + " -> " + std::to_string(late)};
  }
  const double scale = std::max(q.value(), natural_scale(pair, params.alpha()));
  const auto shortfall = [&](ExtendedNonneg v) { return std::max(0.0, q.value() - v.as_double()) / scale; };
  const double first = std::max(shortfall(profile[0]), shortfall(profile[1]));
  const double last = shortfall(profile.back());
  const double allowed = std::max(1e-9, 4.0 * first * std::pow(1e-12, 0.5 / std::max(1.0, params.z())));
  return Outcome{last - allowed, false, "shortfall " + std::to_string(first) + " -> " + std::to_string(last)};
}

}  // namespace azr::verify::detail
