#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <set>
#include <thread>

#include "common.hpp"

namespace azr::verify {

// ---- Instance -------------------------------------------------------------

Instance& Instance::set(const std::string& key, const Matrix& m) {
  matrices_[key] = m;
  return *this;
}

Instance& Instance::set(const std::string& key, double v) {
  scalars_[key] = v;
  return *this;
}

Instance& Instance::set_channel(Channel ch) {
  channel_ = std::move(ch);
  return *this;
}

const Matrix& Instance::matrix(const std::string& key) const {
  const auto it = matrices_.find(key);
  if (it == matrices_.end()) throw std::out_of_range("instance has no matrix '" + key + "'");
  return it->second;
}

PsdElement Instance::state(const std::string& key) const { return PsdElement::from_product(matrix(key)); }

double Instance::scalar(const std::string& key) const {
  const auto it = scalars_.find(key);
  if (it == scalars_.end()) throw std::out_of_range("instance has no scalar '" + key + "'");
  return it->second;
}

const Channel& Instance::channel() const {
  if (!channel_) throw std::out_of_range("instance has no channel");
  return *channel_;
}

Json Instance::to_json() const {
  Json j;
  Json scalars = Json::object();
  for (const auto& [k, v] : scalars_) scalars[k] = real_to_json(v);
  j["scalars"] = scalars;
  Json matrices = Json::object();
  for (const auto& [k, m] : matrices_) matrices[k] = matrix_to_json(m);
  j["matrices"] = matrices;
  if (channel_) j["channel"] = channel_to_json(*channel_);
  return j;
}

Instance Instance::from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("instance must be a JSON object");
  Instance inst;
  if (j.contains("scalars"))
    for (const auto& [k, v] : j.at("scalars").items()) inst.set(k, real_from_json(v));
  if (j.contains("matrices"))
    for (const auto& [k, v] : j.at("matrices").items()) inst.set(k, matrix_from_json(v));
  if (j.contains("channel")) inst.set_channel(channel_from_json(j.at("channel")));
  return inst;
}

double Cell::get(const std::string& key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  throw std::out_of_range("cell has no parameter '" + key + "'");
}

// ---- config ---------------------------------------------------------------

void SuiteConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (dims.empty()) throw ConfigError("dims must not be empty");
  for (std::size_t d : dims)
    if (d < 1 || d > 64) throw ConfigError("dims must lie in 1..64");
  for (double a : alpha_grid)
    if (!(a > 0.0) || !std::isfinite(a) || std::abs(a - 1.0) < 1e-6)
      throw ConfigError("alpha grid values must be positive, finite and at least 1e-6 away from 1");
  for (double z : z_grid)
    if (!(z > 0.0) || !std::isfinite(z)) throw ConfigError("z grid values must be positive and finite");
  if (!(abs_tolerance >= 0.0) || !(rel_tolerance >= 0.0)) throw ConfigError("tolerances must be >= 0");
}

double SuiteConfig::resolve(const Tolerance& t) const {
  switch (t.source) {
    case Tolerance::Source::relative:
      return rel_tolerance;
    case Tolerance::Source::absolute:
      return abs_tolerance;
    case Tolerance::Source::fixed:
      break;
  }
  return t.value;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::theorem_pass:
      return "theorem-pass";
    case Status::theorem_fail:
      return "theorem-FAIL";
    case Status::exploration_consistent:
      return "exploration-consistent";
    case Status::exploration_violation:
      return "exploration-violation";
  }
  return "unknown";
}

int VerificationReport::count(Status s) const {
  return static_cast<int>(std::count_if(properties.begin(), properties.end(),
                                        [s](const PropertyReport& p) { return p.status == s; }));
}

// ---- running --------------------------------------------------------------

namespace {

struct TrialResult {
  Outcome outcome;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  Instance instance;
};

unsigned worker_count(const SuiteConfig& config, std::size_t jobs) {
  unsigned n = config.threads > 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AZRD_THREADS")) {
    const auto cap = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (cap > 0) n = std::min(n, cap);
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

TrialResult run_trial(const Property& p, const SuiteConfig& config, const Cell* cell, std::size_t cell_index,
                      std::uint64_t trial) {
  TrialResult r;
  const std::string stream = cell ? p.name + "#" + std::to_string(cell_index) : p.name;
  r.seed = derive_seed(config.seed, stream, trial);
  r.dim = config.dims[trial % config.dims.size()];
  Rng rng(r.seed);
  TrialContext ctx{rng, r.dim, trial, cell};
  try {
    r.instance = p.generate(ctx);
    r.outcome = p.evaluate(r.instance);
    if (std::isnan(r.outcome.violation)) {
      r.outcome.violation = detail::kInf;
      r.outcome.note = "violation evaluated to NaN" + (r.outcome.note.empty() ? "" : "; " + r.outcome.note);
    }
  } catch (const std::exception& e) {
    r.outcome = {detail::kInf, false, std::string("exception: ") + e.what()};
  }
  return r;
}

std::vector<TrialResult> run_trials(const Property& p, const SuiteConfig& config, const Cell* cell,
                                    std::size_t cell_index, int trials) {
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  const unsigned workers = worker_count(config, results.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) results[i] = run_trial(p, config, cell, cell_index, i);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return results;
}

struct Tally {
  int trials = 0;
  int passed = 0;
  int skipped = 0;
  std::optional<double> min_violation;
  std::optional<double> max_violation;
  std::optional<Witness> witness;
};

Tally tally(std::vector<TrialResult>& results, double tolerance) {
  Tally t;
  t.trials = static_cast<int>(results.size());
  std::size_t worst = results.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Outcome& o = results[i].outcome;
    if (o.skipped) {
      ++t.skipped;
      continue;
    }
    if (o.violation <= tolerance) ++t.passed;
    if (!t.min_violation || o.violation < *t.min_violation) t.min_violation = o.violation;
    if (!t.max_violation || o.violation > *t.max_violation) {
      t.max_violation = o.violation;
      worst = i;
    }
  }
  if (worst < results.size()) {
    TrialResult& r = results[worst];
    t.witness = Witness{worst, r.seed, r.dim, r.outcome.violation, r.outcome.note, std::move(r.instance)};
  }
  return t;
}

int capped(const Property& p, int trials) { return p.trial_cap > 0 ? std::min(trials, p.trial_cap) : trials; }

}  // namespace

PropertyReport run_property(const Property& p, const SuiteConfig& config) {
  config.validate();
  PropertyReport rep;
  rep.name = p.name;
  rep.group = p.group;
  rep.clause = p.clause;
  rep.kind = p.kind;
  rep.tolerance = config.resolve(p.tolerance);
  rep.evidence = p.evidence;
  rep.trials_requested = config.trials;
  const int per = capped(p, config.trials);

  bool counted_violation = false;
  if (p.cells) {
    const std::vector<Cell> cells = p.cells(config);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto results = run_trials(p, config, &cells[c], c, per);
      Tally t = tally(results, rep.tolerance);
      CellReport cr{cells[c], t.trials, t.passed, t.skipped, t.min_violation.value_or(0.0),
                    t.max_violation.value_or(0.0), std::move(t.witness)};
      rep.trials += t.trials;
      rep.passed += t.passed;
      rep.skipped += t.skipped;
      const int failed = t.trials - t.passed - t.skipped;
      if (cells[c].expected) {
        rep.failed += failed;
        counted_violation = counted_violation || failed > 0;
        if (t.max_violation && (!rep.max_violation || *t.max_violation > *rep.max_violation)) {
          rep.max_violation = t.max_violation;
          rep.witness = cr.witness;
        }
      }
      rep.cells.push_back(std::move(cr));
    }
  } else {
    auto results = run_trials(p, config, nullptr, 0, per);
    Tally t = tally(results, rep.tolerance);
    rep.trials = t.trials;
    rep.passed = t.passed;
    rep.skipped = t.skipped;
    rep.failed = t.trials - t.passed - t.skipped;
    rep.max_violation = t.max_violation;
    rep.witness = std::move(t.witness);
    counted_violation = rep.failed > 0;
  }
  if (p.kind == Kind::theorem) {
    rep.status = counted_violation ? Status::theorem_fail : Status::theorem_pass;
  } else {
    rep.status = counted_violation ? Status::exploration_violation : Status::exploration_consistent;
  }
  return rep;
}

VerificationReport run_suite(const SuiteConfig& config, const std::vector<std::string>& selection) {
  config.validate();
  VerificationReport report;
  report.config = config;
  report.selection = selection;
  for (const Property* p : select_properties(selection)) report.properties.push_back(run_property(*p, config));
  return report;
}

// ---- selection ------------------------------------------------------------

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

const char* alias(const std::string& token) {
  static const std::pair<const char*, const char*> table[] = {
      {"q4.1", "explore/lsc"},         {"q4.2", "explore/variational"}, {"q4.3", "explore/positivity-equality"},
      {"q4.4", "explore/dpi"},         {"q4.5", "explore/tensor"},      {"q4.6", "explore/z-monotone"},
      {"question-ineq", "explore/question-ineq"}};
  for (const auto& [from, to] : table)
    if (token == from) return to;
  return nullptr;
}

}  // namespace

const Property& find_property(std::string_view name) {
  for (const Property& p : registry())
    if (p.name == name) return p;
  throw UnknownPropertyError("unknown property '" + std::string(name) + "'");
}

std::vector<const Property*> select_properties(const std::vector<std::string>& tokens) {
  const auto& all = registry();
  std::set<std::size_t> chosen;
  for (const std::string& raw : tokens) {
    const std::string token = lower(raw);
    const char* target = alias(token);
    const std::string key = target ? target : token;
    bool hit = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const Property& p = all[i];
      const std::string head = p.name.substr(0, p.name.find('/'));
      if (key == "all" || p.name == key || head == key || p.group == key) {
        chosen.insert(i);
        hit = true;
      }
    }
    if (!hit) throw UnknownPropertyError("unknown property or suite '" + raw + "'");
  }
  if (tokens.empty()) throw UnknownPropertyError("empty selection");
  std::vector<const Property*> out;
  for (std::size_t i : chosen) out.push_back(&all[i]);
  return out;
}

std::vector<std::string> missing_clauses() {
  std::vector<std::string> missing;
  for (std::string_view clause : kTheoremClauses) {
    const auto& all = registry();
    const auto n = std::count_if(all.begin(), all.end(), [&](const Property& p) {
      return p.name == clause && p.kind == Kind::theorem;
    });
    if (n != 1) missing.emplace_back(clause);
  }
  return missing;
}

PropertyReport explore_question(std::string_view question, const SuiteConfig& config) {
  const char* target = alias(lower(question));
  if (!target) throw UnknownPropertyError("unknown question '" + std::string(question) + "'");
  return run_property(find_property(target), config);
}

Outcome replay(std::string_view property, const Json& witness) {
  const Property& p = find_property(property);
  const Json& body = witness.contains("instance") ? witness.at("instance") : witness;
  return p.evaluate(Instance::from_json(body));
}

// ---- JSON -----------------------------------------------------------------

namespace {

Json witness_to_json(const Witness& w) {
  return {{"trial", w.trial},
          {"seed", w.seed},
          {"dim", w.dim},
          {"violation", real_to_json(w.violation)},
          {"note", w.note},
          {"instance", w.instance.to_json()}};
}

Json cell_to_json(const CellReport& c) {
  Json params = Json::object();
  for (const auto& [k, v] : c.cell.params) params[k] = v;
  Json j{{"params", params},
         {"expected", c.cell.expected},
         {"theorem_regime", c.cell.theorem_regime},
         {"trials", c.trials},
         {"passed", c.passed},
         {"skipped", c.skipped},
         {"min_violation", real_to_json(c.min_violation)},
         {"max_violation", real_to_json(c.max_violation)}};
  if (c.witness && c.passed + c.skipped < c.trials) j["witness"] = witness_to_json(*c.witness);
  return j;
}

}  // namespace

Json config_to_json(const SuiteConfig& config) {
  return {{"seed", config.seed},
          {"dims", config.dims},
          {"trials", config.trials},
          {"abs_tolerance", config.abs_tolerance},
          {"rel_tolerance", config.rel_tolerance},
          {"alpha_grid", config.alpha_grid},
          {"z_grid", config.z_grid}};
}

Json property_report_to_json(const PropertyReport& r) {
  Json j{{"name", r.name},
         {"group", r.group},
         {"clause", r.clause},
         {"kind", r.kind == Kind::theorem ? "theorem" : "exploration"},
         {"tolerance", r.tolerance},
         {"trials_requested", r.trials_requested},
         {"trials", r.trials},
         {"passed", r.passed},
         {"skipped", r.skipped},
         {"failed", r.failed},
         {"max_violation", r.max_violation ? real_to_json(*r.max_violation) : Json(nullptr)},
         {"status", std::string(to_string(r.status))}};
  if (!r.evidence.empty()) j["evidence"] = r.evidence;
  j["witness"] = r.witness ? witness_to_json(*r.witness) : Json(nullptr);
  if (!r.cells.empty()) {
    Json cells = Json::array();
    for (const CellReport& c : r.cells) cells.push_back(cell_to_json(c));
    j["cells"] = cells;
  }
  return j;
}

Json report_to_json(const VerificationReport& report) {
  Json props = Json::array();
  for (const PropertyReport& p : report.properties) props.push_back(property_report_to_json(p));
  int trials = 0;
  int skipped = 0;
  for (const PropertyReport& p : report.properties) {
    trials += p.trials;
    skipped += p.skipped;
  }
  return {{"config", config_to_json(report.config)},
          {"selection", report.selection},
          {"properties", props},
          {"summary",
           {{"properties", report.properties.size()},
            {"trials", trials},
            {"skipped", skipped},
            {"theorem_pass", report.count(Status::theorem_pass)},
            {"theorem_fail", report.count(Status::theorem_fail)},
            {"exploration_consistent", report.count(Status::exploration_consistent)},
            {"exploration_violation", report.count(Status::exploration_violation)}}}};
}

// ---- generalized mean -----------------------------------------------------

GeneralizedMean generalized_mean_check(const StatePair& a, const StatePair& b, const DivergenceParams& params,
                                       double tolerance) {
  GeneralizedMean r;
  if (a.psi_weight() <= 0.0 || b.psi_weight() <= 0.0 || a.psi().is_zero() || b.psi().is_zero()) {
    r.skipped = true;
    return r;
  }
  const double alpha = params.alpha();
  const double d1 = d_alpha_z(a, params);
  const double d2 = d_alpha_z(b, params);
  const double d = d_alpha_z(direct_sum(a, b), params);
  if (!std::isfinite(d1) || !std::isfinite(d2) || !std::isfinite(d)) {
    r.skipped = true;
    return r;
  }
  const auto g = [alpha](double t) { return std::exp((alpha - 1.0) * t); };
  r.lhs = (a.psi_weight() + b.psi_weight()) * g(d);
  r.rhs = a.psi_weight() * g(d1) + b.psi_weight() * g(d2);
  r.ok = detail::equal(r.lhs, r.rhs) <= tolerance;
  return r;
}

}  // namespace azr::verify
