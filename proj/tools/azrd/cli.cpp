#include "azrd/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include "azr/channel.hpp"
#include "azr/divergence.hpp"
#include "azr/json_io.hpp"
#include "azr/variational.hpp"
#include "azr/verify/suite.hpp"

namespace azrd {

namespace {

using azr::Json;

struct Exit {
  int code;
  std::string message;
};

struct Output {
  std::string path;
  std::string format = "json";
};

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.path, "Write the result here instead of stdout");
  cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

std::string render_text(const Json& j) {
  std::string s;
  for (const auto& [key, value] : j.items()) {
    s += key + ": ";
    s += value.is_string() ? value.get<std::string>() : value.dump();
    s += '\n';
  }
  return s;
}

void emit(const Json& j, const Output& o, std::ostream& out) {
  const std::string body = o.format == "text" ? render_text(j) : j.dump(2) + "\n";
  if (o.path.empty()) {
    out << body;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw Exit{kBadInput, "cannot write " + o.path};
  f << body;
}

azr::PsdElement load_state(const std::string& path) {
  return azr::PsdElement(azr::matrix_from_json(azr::read_json_file(path)));
}

azr::Matrix load_matrix(const std::string& path) { return azr::matrix_from_json(azr::read_json_file(path)); }

void check_alpha(double alpha) {
  if (std::abs(alpha - 1.0) < azr::DivergenceParams::kMinDistanceFromOne)
    throw Exit{kAlphaOne, "alpha = 1 is outside the family"};
}

Json defaults_json() {
  const azr::DivergenceOptions d;
  return {{"psd_tolerance", azr::PsdElement::kDefaultTolerance},
          {"support_tolerance", d.support_tolerance},
          {"residual_tolerance", d.residual_tolerance}};
}

// ---- compute --------------------------------------------------------------

struct ComputeArgs {
  std::string psi, phi, family = "az";
  double alpha = 0.0;
  std::optional<double> z;
  bool q_only = false;
  Output out;
};

Json compute(const ComputeArgs& a) {
  check_alpha(a.alpha);
  const azr::StatePair pair(load_state(a.psi), load_state(a.phi));
  double z = 0.0;
  azr::ExtendedNonneg q;
  if (a.family == "az") {
    if (!a.z) throw Exit{kBadInput, "--z is required for the az family"};
    z = *a.z;
    q = azr::q_alpha_z(pair, azr::DivergenceParams(a.alpha, z));
  } else if (a.family == "petz") {
    z = 1.0;
    q = azr::petz_q(pair, a.alpha);
  } else {
    z = a.alpha;
    q = azr::sandwiched_q(pair, a.alpha);
  }
  Json j{{"family", a.family},
         {"alpha", a.alpha},
         {"z", z},
         {"Q", azr::extended_to_json(q)},
         {"finite", q.is_finite()},
         {"support_ok", azr::support_contained(pair.psi(), pair.phi())},
         {"weights", {{"psi", pair.psi_weight()}, {"phi", pair.phi_weight()}}}};
  if (!a.q_only) {
    if (pair.psi().is_zero()) throw Exit{kZeroPsi, "D is undefined for psi = 0"};
    j["D"] = azr::real_to_json(azr::divergence_from_q(q, pair.psi_weight(), a.alpha));
  }
  j["defaults"] = defaults_json();
  return j;
}

// ---- identity -------------------------------------------------------------

struct IdentityArgs {
  std::string psi, phi, form = "x";
  double alpha = 0.0, z = 0.0;
  Output out;
};

Json identity(const IdentityArgs& a) {
  check_alpha(a.alpha);
  if (a.alpha < 1.0) throw Exit{kBadInput, "the identity is defined for alpha > 1"};
  const azr::StatePair pair(load_state(a.psi), load_state(a.phi));
  const azr::DivergenceParams params(a.alpha, a.z);
  const auto w = a.form == "x" ? azr::solve_identity_x(pair, params) : azr::solve_identity_y(pair, params);
  Json j{{"form", a.form}, {"alpha", a.alpha}, {"z", a.z}, {"exists", w.has_value()}};
  if (w) {
    j["witness"] = azr::matrix_to_json(w->matrix);
    j["residual"] = w->residual;
    j["norm_power"] = w->norm_power;
  }
  j["Q"] = azr::extended_to_json(azr::q_alpha_z(pair, params));
  j["defaults"] = defaults_json();
  return j;
}

// ---- variational ----------------------------------------------------------

struct VariationalArgs {
  std::string psi, phi, start = "closed_form";
  double alpha = 0.0, z = 0.0;
  int budget = azr::OptimizerOptions{}.budget;
  std::uint64_t seed = 0;
  Output out;
};

Json variational(const VariationalArgs& a) {
  check_alpha(a.alpha);
  const azr::StatePair pair(load_state(a.psi), load_state(a.phi));
  const azr::DivergenceParams params(a.alpha, a.z);
  const bool below = params.below_one();
  const auto q = azr::q_alpha_z(pair, params);

  const bool faithful = pair.psi().rank() == pair.dim() && pair.phi().rank() == pair.dim();
  const std::optional<double> reg = faithful ? std::nullopt : std::optional(azr::default_regularization(pair));
  const azr::PsdElement a0 = azr::closed_form_witness(pair, params, reg);
  const double witness_value =
      below ? azr::objective_lower(a0, pair, params) : azr::objective_upper(a0, pair, params);

  azr::OptimizerOptions opts;
  opts.budget = a.budget;
  opts.seed = a.seed;
  opts.start = a.start == "identity" ? azr::OptimizerOptions::Start::identity
               : a.start == "random" ? azr::OptimizerOptions::Start::random
                                     : azr::OptimizerOptions::Start::closed_form;
  const azr::VariationalProbe probe =
      below ? azr::minimize_lower(pair, params, opts) : azr::maximize_upper(pair, params, opts);
  const double best = below ? std::min(witness_value, probe.objective_value)
                            : std::max(witness_value, probe.objective_value);

  Json j{{"alpha", a.alpha},
         {"z", a.z},
         {"direction", below ? "infimum" : "supremum"},
         {"Q", azr::extended_to_json(q)},
         {"witness_value", witness_value},
         {"optimizer_value", probe.objective_value},
         {"iterations", probe.iterations},
         {"budget_exhausted", probe.budget_exhausted},
         {"regularization", reg ? azr::real_to_json(*reg) : Json(nullptr)}};
  if (q.is_finite()) {
    const double gap = below ? best - q.value() : q.value() - best;
    j["gap"] = gap;
    j["relative_gap"] = q.value() > 0.0 ? azr::real_to_json(gap / q.value()) : Json(nullptr);
  } else {
    j["gap"] = "inf";
    j["relative_gap"] = "inf";
  }
  j["witness"] = azr::matrix_to_json(a0.matrix());
  j["optimizer_point"] = azr::matrix_to_json(probe.a.matrix());
  j["defaults"] = {{"budget", opts.budget}, {"fd_step", opts.fd_step},
                   {"gradient_tolerance", opts.gradient_tolerance}, {"start", a.start}};
  return j;
}

// ---- channel --------------------------------------------------------------

struct ChannelArgs {
  std::string channel, predual, dual, phi, apply;
  bool recovery = false;
  Output out;
};

Json channel(const ChannelArgs& a) {
  const azr::Channel ch = azr::channel_from_json(azr::read_json_file(a.channel));
  const int modes = !a.predual.empty() + !a.dual.empty() + a.recovery;
  if (modes != 1) throw Exit{kBadInput, "choose exactly one of --predual, --dual, --recovery"};
  Json j{{"in_dim", ch.in_dim()},
         {"out_dim", ch.out_dim()},
         {"completely_positive", ch.completely_positive()},
         {"unitality_residual", azr::unitality_residual(ch)}};
  if (!a.predual.empty()) {
    const azr::PsdElement h = load_state(a.predual);
    j["mode"] = "predual";
    j["result"] = azr::matrix_to_json(ch.apply_predual(h).matrix());
  } else if (!a.dual.empty()) {
    j["mode"] = "dual";
    j["result"] = azr::matrix_to_json(ch.apply_dual(load_matrix(a.dual)));
  } else {
    if (a.phi.empty()) throw Exit{kBadInput, "--recovery needs --phi"};
    const azr::RecoveryMap r = azr::petz_recovery(ch, load_state(a.phi));
    j["mode"] = "recovery";
    j["phi_gamma"] = azr::matrix_to_json(r.phi_gamma.matrix());
    j["domain_support"] = azr::matrix_to_json(r.domain_support);
    j["range_support"] = azr::matrix_to_json(r.range_support);
    j["representation"] = azr::matrix_to_json(r.map.representation());
    if (!a.apply.empty()) {
      const azr::Matrix m = load_matrix(a.apply);
      j["result"] = azr::matrix_to_json(r.apply(m));
      j["identity_residual"] = azr::recovery_identity_residual(ch, r, r.domain_support * m * r.domain_support);
    }
  }
  j["defaults"] = {{"unitality_tolerance", ch.unitality_tolerance()}};
  return j;
}

// ---- verify / explore -----------------------------------------------------

struct SuiteArgs {
  azr::verify::SuiteConfig config;
  std::vector<std::string> selection;
  bool strict = false;
  Output out;
};

void add_suite_options(CLI::App* cmd, SuiteArgs& s) {
  cmd->add_option("--seed", s.config.seed, "Root seed");
  cmd->add_option("--dims", s.config.dims, "Matrix dimensions, comma separated")->delimiter(',');
  cmd->add_option("--trials", s.config.trials, "Trials per property (or per cell, up to its cap)");
  cmd->add_option("--threads", s.config.threads, "Worker threads (0 = automatic)");
  cmd->add_option("--abs-tol", s.config.abs_tolerance, "Absolute tolerance");
  cmd->add_option("--rel-tol", s.config.rel_tolerance, "Relative tolerance");
  cmd->add_option("--alphas", s.config.alpha_grid, "Exploration alpha grid")->delimiter(',');
  cmd->add_option("--zs", s.config.z_grid, "Exploration z grid")->delimiter(',');
  cmd->add_flag("--strict", s.strict, "Exploration violations also fail");
  add_output(cmd, s.out);
}

std::string summary_line(const azr::verify::PropertyReport& r) {
  std::string s = std::string(azr::verify::to_string(r.status)) + "  " + r.name + "  " + std::to_string(r.passed) +
                  "/" + std::to_string(r.trials);
  if (r.skipped) s += " (" + std::to_string(r.skipped) + " skipped)";
  if (r.max_violation) s += "  max " + azr::real_to_json(*r.max_violation).dump();
  return s;
}

int verify(const SuiteArgs& s, std::ostream& out) {
  const auto report = azr::verify::run_suite(s.config, s.selection);
  if (s.out.format == "text") {
    std::string body;
    for (const auto& p : report.properties) body += summary_line(p) + "\n";
    if (s.out.path.empty()) {
      out << body;
    } else {
      std::ofstream(s.out.path, std::ios::binary) << body;
    }
  } else {
    emit(azr::verify::report_to_json(report), s.out, out);
    if (!s.out.path.empty())
      for (const auto& p : report.properties) out << summary_line(p) << "\n";
  }
  if (report.theorem_failure()) return kTheoremFailure;
  if (s.strict && report.exploration_violation()) return kTheoremFailure;
  return kOk;
}

int explore(const SuiteArgs& s, std::ostream& out) {
  s.config.validate();
  Json questions = Json::array();
  bool violation = false;
  for (const std::string& q : s.selection) {
    const auto r = azr::verify::explore_question(q, s.config);
    violation = violation || r.status == azr::verify::Status::exploration_violation;
    Json entry = azr::verify::property_report_to_json(r);
    entry["question"] = q;
    questions.push_back(entry);
  }
  emit(Json{{"config", azr::verify::config_to_json(s.config)}, {"questions", questions}}, s.out, out);
  return s.strict && violation ? kTheoremFailure : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"alpha-z Renyi divergences: compute, verify, explore", "azrd"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* c = app.add_subcommand("compute", "Q and D for a pair of densities");
  c->add_option("--psi", ca.psi, "Density of psi (matrix JSON)")->required();
  c->add_option("--phi", ca.phi, "Density of phi (matrix JSON)")->required();
  c->add_option("--alpha", ca.alpha, "alpha > 0, alpha != 1")->required();
  c->add_option("--z", ca.z, "z > 0 (az family)");
  c->add_option("--family", ca.family, "az, petz or sandwiched")->check(CLI::IsMember({"az", "petz", "sandwiched"}));
  c->add_flag("--q-only", ca.q_only, "Skip D");
  add_output(c, ca.out);

  IdentityArgs ia;
  auto* i = app.add_subcommand("identity", "Solve h_psi^{a/z} = G x G or h_psi^{a/2z} = y G (alpha > 1)");
  i->add_option("--psi", ia.psi, "Density of psi (matrix JSON)")->required();
  i->add_option("--phi", ia.phi, "Density of phi (matrix JSON)")->required();
  i->add_option("--alpha", ia.alpha, "alpha > 1")->required();
  i->add_option("--z", ia.z, "z > 0")->required();
  i->add_option("--form", ia.form, "x (sandwich) or y (right factor)")->check(CLI::IsMember({"x", "y"}));
  add_output(i, ia.out);

  VariationalArgs va;
  auto* v = app.add_subcommand("variational", "Closed-form witness and numerical optimum of the variational objective");
  v->add_option("--psi", va.psi, "Density of psi (matrix JSON)")->required();
  v->add_option("--phi", va.phi, "Density of phi (matrix JSON)")->required();
  v->add_option("--alpha", va.alpha, "alpha > 0, alpha != 1")->required();
  v->add_option("--z", va.z, "z > 0")->required();
  v->add_option("--budget", va.budget, "Optimizer iterations");
  v->add_option("--start", va.start, "identity, closed_form or random")
      ->check(CLI::IsMember({"identity", "closed_form", "random"}));
  v->add_option("--seed", va.seed, "Seed for the random start");
  add_output(v, va.out);

  ChannelArgs cha;
  auto* ch = app.add_subcommand("channel", "Apply a channel, its predual or its recovery map");
  ch->add_option("--channel", cha.channel, "Channel JSON")->required();
  ch->add_option("--predual", cha.predual, "Density on the output algebra");
  ch->add_option("--dual", cha.dual, "Observable on the input algebra");
  ch->add_flag("--recovery", cha.recovery, "Build the recovery map for --phi");
  ch->add_option("--phi", cha.phi, "Reference density for --recovery");
  ch->add_option("--apply", cha.apply, "Observable to push through the recovery map");
  add_output(ch, cha.out);

  SuiteArgs vs;
  vs.selection = {"all"};
  auto* ver = app.add_subcommand("verify", "Run property suites");
  add_suite_options(ver, vs);
  ver->add_option("--suite", vs.selection, "Property, group or alias; comma separated")->delimiter(',');

  SuiteArgs es;
  es.selection = {"q4.1", "q4.2", "q4.3", "q4.4", "q4.5", "q4.6", "question-ineq"};
  es.config.trials = 60;
  auto* ex = app.add_subcommand("explore", "Sweep the open questions over (alpha, z) grids");
  add_suite_options(ex, es);
  ex->add_option("--question", es.selection, "q4.1 … q4.6 or question-ineq; comma separated")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (c->parsed()) emit(compute(ca), ca.out, out);
    if (i->parsed()) emit(identity(ia), ia.out, out);
    if (v->parsed()) emit(variational(va), va.out, out);
    if (ch->parsed()) emit(channel(cha), cha.out, out);
    if (ver->parsed()) return verify(vs, out);
    if (ex->parsed()) return explore(es, out);
    return kOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  } catch (const Exit& e) {
    err << "azrd: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    err << "azrd: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    err << "azrd: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    err << "azrd: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace azrd
