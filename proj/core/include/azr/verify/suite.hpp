#pragma once

#include <array>
#include <stdexcept>
#include <string_view>

#include "azr/verify/property.hpp"

namespace azr::verify {

/// Selection token that names no property, group or alias.
class UnknownPropertyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid suite configuration (no trials, empty dims, α grid touching 1).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims{2, 3, 4, 5};
  int trials = 1000;
  double abs_tolerance = 1e-9;
  double rel_tolerance = 1e-8;
  /// Override the default (α, z) grids of the exploration sweeps when non-empty.
  std::vector<double> alpha_grid;
  std::vector<double> z_grid;
  /// Worker threads; 0 picks AZRD_THREADS or the hardware count.
  unsigned threads = 0;

  void validate() const;
  double resolve(const Tolerance& t) const;
};

/// Every theorem clause has exactly one property of this name.
inline constexpr std::array<std::string_view, 17> kTheoremClauses{
    "scaling/lt1",     "direct-sum/lt1", "order/lt1",      "continuity/lt1", "eps-limit/lt1", "variational/lt1",
    "positivity/lt1",  "dpi/lt1",        "concavity/lt1",  "z-monotone/lt1", "scaling/gt1",   "direct-sum/gt1",
    "order/gt1",       "lsc/gt1",        "eps-limit/gt1",  "variational/gt1", "positivity/gt1"};
static_assert(kTheoremClauses.size() == 10 + 7);

enum class Status { theorem_pass, theorem_fail, exploration_consistent, exploration_violation };

std::string_view to_string(Status s);

struct Witness {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  double violation = 0.0;
  std::string note;
  Instance instance;
};

struct CellReport {
  Cell cell;
  int trials = 0;
  int passed = 0;
  int skipped = 0;
  double min_violation = 0.0;
  double max_violation = 0.0;
  std::optional<Witness> witness;
};

struct PropertyReport {
  std::string name;
  std::string group;
  std::string clause;
  Kind kind = Kind::theorem;
  double tolerance = 0.0;
  std::string evidence;
  int trials_requested = 0;
  int trials = 0;
  int passed = 0;
  int skipped = 0;
  int failed = 0;
  std::optional<double> max_violation;  ///< empty when every trial was skipped
  std::optional<Witness> witness;       ///< worst evaluated trial
  std::vector<CellReport> cells;
  Status status = Status::theorem_pass;
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<std::string> selection;
  std::vector<PropertyReport> properties;

  int count(Status s) const;
  bool theorem_failure() const { return count(Status::theorem_fail) > 0; }
  bool exploration_violation() const { return count(Status::exploration_violation) > 0; }
};

/// The full registry, in report order.
const std::vector<Property>& registry();
const Property& find_property(std::string_view name);

/// Resolves tokens: a full name, the part before '/', a group, "all", or one
/// of the aliases q4.1 … q4.6 and question-ineq. Order follows the registry
/// and duplicates collapse. Throws UnknownPropertyError.
std::vector<const Property*> select_properties(const std::vector<std::string>& tokens);

/// Theorem clauses that have no registered property (empty when covered).
std::vector<std::string> missing_clauses();

PropertyReport run_property(const Property& p, const SuiteConfig& config);
VerificationReport run_suite(const SuiteConfig& config, const std::vector<std::string>& selection);

/// One exploration sweep by question id ("Q4.1" … "Q4.6", case-insensitive,
/// or "question-ineq").
PropertyReport explore_question(std::string_view question, const SuiteConfig& config);

/// Re-evaluates a serialized witness ({"instance": …} or a bare instance).
Outcome replay(std::string_view property, const Json& witness);

Json report_to_json(const VerificationReport& report);
Json property_report_to_json(const PropertyReport& report);
Json config_to_json(const SuiteConfig& config);

/// Both sides of (ψ₁(1)+ψ₂(1)) g(D(ψ₁⊕ψ₂‖φ₁⊕φ₂)) = ψ₁(1)g(D₁) + ψ₂(1)g(D₂)
/// with g(t) = exp((α−1)t). Skipped when either D is infinite or a ψ is zero.
struct GeneralizedMean {
  double lhs = 0.0;
  double rhs = 0.0;
  bool skipped = false;
  bool ok = false;
};
GeneralizedMean generalized_mean_check(const StatePair& a, const StatePair& b, const DivergenceParams& params,
                                       double tolerance = 1e-8);

}  // namespace azr::verify
