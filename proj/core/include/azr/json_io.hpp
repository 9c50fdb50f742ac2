#pragma once

#include <nlohmann/json.hpp>

#include "azr/channel.hpp"
#include "azr/extended.hpp"

namespace azr {

using Json = nlohmann::json;

/// Malformed JSON input for a matrix, state or channel.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {"dim": n, "re": [[...]], "im": [[...]]}; rectangular matrices use
/// "rows"/"cols" instead of "dim". "im" may be omitted on input.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"in_dim", "out_dim", "kraus": [...]} or {"linear_map": matrix}; a linear
/// map takes its dimensions from "in_dim"/"out_dim" or, failing that, from
/// the square roots of its column and row counts.
Json channel_to_json(const Channel& ch);
Channel channel_from_json(const Json& j);

/// Finite values as numbers, ∞ as the string "inf".
Json extended_to_json(ExtendedNonneg v);
/// Same convention for plain doubles: ±inf become "inf"/"-inf", NaN "nan".
Json real_to_json(double v);
double real_from_json(const Json& j);

/// Reads a whole file as JSON. Throws FormatError on I/O or parse failure.
Json read_json_file(const std::string& path);

}  // namespace azr
