#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "azr/channel.hpp"
#include "azr/json_io.hpp"
#include "azr/random.hpp"

namespace azr::verify {

/// Everything one trial evaluates. Replaying a serialized instance reproduces
/// the trial exactly, so evaluation may read nothing outside it.
class Instance {
 public:
  Instance& set(const std::string& key, const Matrix& m);
  Instance& set(const std::string& key, double v);
  Instance& set_channel(Channel ch);

  const Matrix& matrix(const std::string& key) const;
  /// The stored matrix as a density (Hermitized, kernel kept exact).
  PsdElement state(const std::string& key) const;
  double scalar(const std::string& key) const;
  bool has_scalar(const std::string& key) const { return scalars_.count(key) != 0; }
  const Channel& channel() const;

  Json to_json() const;
  static Instance from_json(const Json& j);

 private:
  std::map<std::string, Matrix> matrices_;
  std::map<std::string, double> scalars_;
  std::optional<Channel> channel_;
};

/// Signed, normalized amount by which a trial misses its claim; a trial passes
/// when violation ≤ tolerance. Negative values are slack.
struct Outcome {
  double violation = 0.0;
  bool skipped = false;
  std::string note;

  static Outcome skip(std::string why) { return {0.0, true, std::move(why)}; }
};

/// One point of an exploration grid. expected marks cells where the statement
/// is known to hold for matrices; only those decide the exploration status.
struct Cell {
  std::vector<std::pair<std::string, double>> params;
  bool expected = true;
  bool theorem_regime = false;

  double get(const std::string& key) const;
};

struct TrialContext {
  Rng& rng;
  std::size_t dim;
  std::uint64_t trial;
  const Cell* cell;  ///< null outside exploration sweeps
};

enum class Kind { theorem, exploration };

/// Where a property takes its tolerance from.
struct Tolerance {
  enum class Source { relative, absolute, fixed };
  Source source = Source::relative;
  double value = 0.0;  ///< used when source is fixed

  static Tolerance relative() { return {Source::relative, 0.0}; }
  static Tolerance absolute() { return {Source::absolute, 0.0}; }
  static Tolerance fixed(double v) { return {Source::fixed, v}; }
};

struct SuiteConfig;

struct Property {
  std::string name;
  std::string group;
  std::string clause;
  Kind kind = Kind::theorem;
  Tolerance tolerance;
  int trial_cap = 0;       ///< per property, or per cell for sweeps; 0 = none
  std::string evidence;    ///< caveat printed alongside the result, if any
  std::function<Instance(TrialContext&)> generate;
  std::function<Outcome(const Instance&)> evaluate;
  /// Grid for exploration sweeps; empty function for plain properties.
  std::function<std::vector<Cell>(const SuiteConfig&)> cells;
};

}  // namespace azr::verify
