#include <doctest.h>

#include <cmath>

#include "azr/json_io.hpp"
#include "azr/random.hpp"

using namespace azr;

TEST_CASE("matrix JSON round trip is exact") {
  Rng rng(1);
  const Matrix m = random_gaussian(rng, 4, 4) * (1.0 / 3.0);
  const Json j = matrix_to_json(m);
  CHECK(j.at("dim") == 4);
  CHECK(matrix_from_json(Json::parse(j.dump())) == m);

  const Matrix r = random_gaussian(rng, 2, 5);
  const Json jr = matrix_to_json(r);
  CHECK(jr.at("rows") == 2);
  CHECK(jr.at("cols") == 5);
  CHECK(matrix_from_json(Json::parse(jr.dump())) == r);
}

TEST_CASE("matrix JSON accepts a missing imaginary part") {
  const Matrix m = matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0], [0, 2]]})"));
  CHECK(m == Matrix::diagonal({1.0, 2.0}));
}

TEST_CASE("malformed matrix JSON") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re": [[1]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0], [0]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 1, "re": [["x"]]})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": -1, "re": []})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[1, 2]")), FormatError);
}

TEST_CASE("channel JSON round trip") {
  const Channel k = random_channel(2, 3, 2, 5);
  const Channel k2 = channel_from_json(Json::parse(channel_to_json(k).dump()));
  REQUIRE(k2.kraus());
  CHECK((*k2.kraus())[1] == (*k.kraus())[1]);

  const Channel t = transpose_map(3);
  const Channel t2 = channel_from_json(Json::parse(channel_to_json(t).dump()));
  CHECK(!t2.completely_positive());
  CHECK(t2.linear_map().representation() == t.linear_map().representation());

  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"in_dim": 2})")), FormatError);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"in_dim": 3, "kraus": [{"dim": 2, "re": [[1, 0], [0, 1]]}]})")),
                  FormatError);
}

TEST_CASE("extended values use string tokens") {
  CHECK(extended_to_json(ExtendedNonneg::infinity()) == "inf");
  CHECK(extended_to_json(ExtendedNonneg::finite(0.25)) == 0.25);
  CHECK(real_to_json(-INFINITY) == "-inf");
  CHECK(std::isinf(real_from_json(Json("inf"))));
  CHECK(real_from_json(Json(1.5)) == 1.5);
  CHECK_THROWS_AS(real_from_json(Json("abc")), FormatError);
}
