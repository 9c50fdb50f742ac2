#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "azr/divergence.hpp"
#include "azr/random.hpp"
#include "azr/verify/suite.hpp"
#include "azrd/cli.hpp"

using namespace azr;
using namespace azr::verify;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  int number;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(int number, bool pass, const std::string& detail) {
  lines.push_back({number, pass, detail});
  std::printf("criterion %2d  %s  %s\n", number, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SuiteConfig config(std::vector<std::size_t> dims = {2, 3, 4, 5}, int trials = 1000) {
  SuiteConfig c;
  c.seed = 42;
  c.dims = std::move(dims);
  c.trials = trials;
  return c;
}

/// Runs each named property and summarizes; every one must be a theorem-pass
/// with at least `min_trials` evaluated or skipped trials.
std::pair<bool, std::string> run_all(const std::vector<std::string>& names, const SuiteConfig& c, int min_trials) {
  bool ok = true;
  std::string bad;
  int evaluated = 0;
  double worst = -INFINITY;
  for (const Property* p : select_properties(names)) {
    const PropertyReport r = run_property(*p, c);
    evaluated += r.passed + r.failed;
    if (r.max_violation) worst = std::max(worst, *r.max_violation);
    if (r.status != Status::theorem_pass || r.trials < min_trials) {
      ok = false;
      bad += " " + r.name + "(" + std::to_string(r.failed) + " failed of " + std::to_string(r.trials) + ")";
    }
  }
  return {ok, std::to_string(evaluated) + " trials, worst violation " + fmt(worst) + (bad.empty() ? "" : ";" + bad)};
}

void diagonal_oracle() {
  const auto t0 = Clock::now();
  auto [ok, detail] = run_all({"diagonal-oracle"}, config({2, 3, 4, 5, 6}), 1000);
  const double t = seconds_since(t0);
  report(1, ok && t < 30.0, "commuting oracle, dims 2-6: " + detail + ", " + fmt(t) + " s");
}

void specializations() {
  auto [ok, detail] = run_all({"petz-specialization", "sandwiched-specialization"}, config(), 1000);
  report(2, ok, "z = 1 and z = alpha specializations: " + detail);
}

void suite_below_one() {
  const auto t0 = Clock::now();
  auto [ok, detail] = run_all({"theorem-lt1"}, config(), 1000);
  const double t = seconds_since(t0);
  report(3, ok && t < 600.0, "alpha < 1 clauses: " + detail + ", " + fmt(t) + " s");
}

void variational_equality() {
  auto [ok, detail] = run_all({"variational-equality/lt1", "variational-search/lt1"}, config(), 200);
  report(4, ok, "closed form within 1e-7, optimizer never below Q by 1e-6: " + detail);
}

void suite_above_one() {
  auto [ok, detail] = run_all({"theorem-gt1", "identity-witness-norms"}, config(), 1000);
  report(5, ok, "alpha > 1 clauses and witness norms: " + detail);
}

void positivity_equality() {
  Rng rng(derive_seed(42, "acceptance/positivity", 0));
  int strict_fail = 0;
  double min_gap = INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 4);
    const bool below = i % 2 == 0;
    const double alpha = below ? uniform(rng, 0.1, 0.9) : uniform(rng, 1.1, 4.0);
    double z = below ? uniform(rng, 0.5, 4.0) : uniform(rng, alpha / 2.0, alpha / 2.0 + 3.0);
    if (!below && i % 10 == 1) z = 1.0;
    const StatePair pair(random_state(rng, n), random_state(rng, n));
    const double q = q_alpha_z(pair, DivergenceParams(alpha, z)).as_double();
    const double base = std::pow(pair.psi_weight(), alpha) * std::pow(pair.phi_weight(), 1.0 - alpha);
    const double gap = std::abs(q - base) / base;
    min_gap = std::min(min_gap, gap);
    if (!(gap > 1e-10)) ++strict_fail;
  }

  int equal_fail = 0;
  int holder_fail = 0;
  double worst_eq = 0.0;
  double worst_lambda = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 4);
    const PsdElement phi = random_state_mixed_rank(rng, n);
    const double lambda = uniform(rng, 0.1, 10.0);
    const PsdElement psi = PsdElement::from_product(phi.matrix() * lambda);
    const bool below = i % 2 == 0;
    const double alpha = below ? uniform(rng, 0.1, 0.9) : uniform(rng, 1.1, 4.0);
    const double z = below ? uniform(rng, 0.5, 4.0) : uniform(rng, alpha / 2.0, alpha / 2.0 + 3.0);
    const double q = q_alpha_z(StatePair(psi, phi), DivergenceParams(alpha, z)).as_double();
    const double base = std::pow(psi.trace(), alpha) * std::pow(phi.trace(), 1.0 - alpha);
    const double rel = std::abs(q - base) / base;
    worst_eq = std::max(worst_eq, rel);
    if (rel > 1e-10) ++equal_fail;

    const double p = uniform(rng, 1.2, 4.0);
    const double qh = uniform(rng, std::max(1.2, p / (p - 1.0)), 6.0);
    const double r = 1.0 / (1.0 / p + 1.0 / qh);
    const auto h = holder_equality_check(mat_pow(psi, 1.0 / p), mat_pow(phi, 1.0 / qh), p, qh, r);
    const auto* prop = std::get_if<HolderProportional>(&h);
    if (!prop || !(prop->lambda > 0.0)) {
      ++holder_fail;
      continue;
    }
    const double recovered = prop->oriented ? prop->lambda : 1.0 / prop->lambda;
    const double err = std::abs(recovered - lambda) / lambda;
    worst_lambda = std::max(worst_lambda, err);
    if (err > 1e-6) ++holder_fail;
  }
  const bool ok = strict_fail == 0 && equal_fail == 0 && holder_fail == 0;
  report(6, ok,
         "non-proportional: " + std::to_string(10000 - strict_fail) + "/10000 with gap > 1e-10 (min " +
             fmt(min_gap) + "); proportional: " + std::to_string(1000 - equal_fail) + "/1000 equal (worst " +
             fmt(worst_eq) + "), Hoelder detects " + std::to_string(1000 - holder_fail) + "/1000 (worst lambda error " +
             fmt(worst_lambda) + ")");
}

void recovery() {
  auto [ok, detail] = run_all({"channels"}, config(), 1000);
  report(7, ok, "recovery map and channel inequalities: " + detail);
}

void lemmas() {
  auto [ok, detail] = run_all({"holder", "norm-order", "trace-equality", "quasi-norm-subadditivity",
                               "powers-stormer", "alt-inequality"},
                              config(), 1000);
  report(8, ok, "norm lemmas: " + detail);
}

void exploration() {
  const VerificationReport r = run_suite(config(), {"explore"});
  int cells = 0;
  std::string bad;
  for (const auto& p : r.properties) {
    cells += static_cast<int>(p.cells.size());
    if (p.status == Status::exploration_violation) bad += " " + p.name;
  }
  report(9, bad.empty(),
         std::to_string(r.properties.size()) + " sweeps, " + std::to_string(cells) + " cells, " +
             std::to_string(r.count(Status::exploration_violation)) + " with violations" + bad);
}

void determinism() {
  const auto once = [](std::vector<std::string> extra) {
    std::vector<std::string> args{"verify", "--suite", "all", "--seed", "42"};
    args.insert(args.end(), extra.begin(), extra.end());
    std::ostringstream out, err;
    const int code = azrd::run(args, out, err);
    return std::pair{code, out.str()};
  };
  const auto a = once({});
  const auto b = once({"--threads", "1"});
  const bool ok = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second;
  report(10, ok,
         "verify --suite all --seed 42 twice (default and one thread): " + std::to_string(a.second.size()) +
             " bytes, " + (a.second == b.second ? "identical" : "different") + ", exit codes " +
             std::to_string(a.first) + " " + std::to_string(b.first));
}

}  // namespace

int main() {
  diagonal_oracle();
  specializations();
  suite_below_one();
  variational_equality();
  suite_above_one();
  positivity_equality();
  recovery();
  lemmas();
  exploration();
  determinism();
  int failed = 0;
  for (const auto& l : lines) failed += l.pass ? 0 : 1;
  std::printf("%d/%zu criteria pass\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
