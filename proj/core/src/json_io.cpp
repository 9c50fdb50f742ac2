#include "azr/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace azr {
namespace {

std::size_t size_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    throw FormatError(std::string("matrix JSON: missing or invalid \"") + key + "\"");
  }
  return j.at(key).get<std::size_t>();
}

std::vector<std::vector<double>> grid(const Json& j, const char* key, std::size_t rows, std::size_t cols) {
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols, 0.0));
  if (!j.contains(key)) return out;
  const Json& g = j.at(key);
  if (!g.is_array() || g.size() != rows) {
    throw FormatError(std::string("matrix JSON: \"") + key + "\" must have " + std::to_string(rows) + " rows");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = g[r];
    if (!row.is_array() || row.size() != cols) {
      throw FormatError(std::string("matrix JSON: row ") + std::to_string(r) + " of \"" + key + "\" must have " +
                        std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw FormatError("matrix JSON: entries must be numbers");
      out[r][c] = row[c].get<double>();
    }
  }
  return out;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json j;
  if (m.is_square()) {
    j["dim"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("matrix JSON must be an object");
  std::size_t rows;
  std::size_t cols;
  if (j.contains("dim")) {
    rows = cols = size_field(j, "dim");
  } else {
    rows = size_field(j, "rows");
    cols = size_field(j, "cols");
  }
  if (!j.contains("re")) throw FormatError("matrix JSON: missing \"re\"");
  const auto re = grid(j, "re", rows, cols);
  const auto im = grid(j, "im", rows, cols);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  if (!m.all_finite()) throw FormatError("matrix JSON: non-finite entry");
  return m;
}

Json channel_to_json(const Channel& ch) {
  Json j;
  j["in_dim"] = ch.in_dim();
  j["out_dim"] = ch.out_dim();
  if (ch.kraus()) {
    Json ks = Json::array();
    for (const Matrix& k : *ch.kraus()) ks.push_back(matrix_to_json(k));
    j["kraus"] = std::move(ks);
  } else {
    j["linear_map"] = matrix_to_json(ch.linear_map().representation());
  }
  return j;
}

Channel channel_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("channel JSON must be an object");
  try {
    if (j.contains("kraus")) {
      const Json& ks = j.at("kraus");
      if (!ks.is_array() || ks.empty()) throw FormatError("channel JSON: \"kraus\" must be a nonempty array");
      std::vector<Matrix> kraus;
      for (const Json& k : ks) kraus.push_back(matrix_from_json(k));
      Channel ch = Channel::from_kraus(std::move(kraus));
      if ((j.contains("in_dim") && j.at("in_dim").get<std::size_t>() != ch.in_dim()) ||
          (j.contains("out_dim") && j.at("out_dim").get<std::size_t>() != ch.out_dim())) {
        throw FormatError("channel JSON: in_dim/out_dim disagree with the Kraus shapes");
      }
      return ch;
    }
    if (j.contains("linear_map")) {
      Matrix rep = matrix_from_json(j.at("linear_map"));
      std::size_t in = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rep.cols()))));
      std::size_t out = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rep.rows()))));
      if (j.contains("in_dim")) in = j.at("in_dim").get<std::size_t>();
      if (j.contains("out_dim")) out = j.at("out_dim").get<std::size_t>();
      return Channel::from_linear_map(LinearMap(in, out, std::move(rep)));
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("channel JSON: ") + e.what());
  } catch (const DimensionError& e) {
    throw FormatError(std::string("channel JSON: ") + e.what());
  }
  throw FormatError("channel JSON needs \"kraus\" or \"linear_map\"");
}

Json extended_to_json(ExtendedNonneg v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

Json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw FormatError("expected a number or one of \"inf\", \"-inf\", \"nan\"");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace azr
