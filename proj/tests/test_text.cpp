#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "dcsim/text.hpp"

using namespace dcsim::text;

TEST_CASE("trim and split") {
  CHECK(trim("  a b \t\r") == "a b");
  CHECK(trim("") == "");
  const auto parts = split("a,,b,", ',');
  REQUIRE(parts.size() == 4);
  CHECK(parts[0] == "a");
  CHECK(parts[1].empty());
  CHECK(parts[3].empty());
}

TEST_CASE("parse_double accepts whole numbers only") {
  CHECK(parse_double("0.380").value() == 0.380);
  CHECK(parse_double(" +367.450 ").value() == 367.450);
  CHECK(parse_double("-3.7").value() == -3.7);
  CHECK_FALSE(parse_double("1.2x").has_value());
  CHECK_FALSE(parse_double("").has_value());
  CHECK_FALSE(parse_double("abc").has_value());
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 367.45, -2.5e-17, 1e300, 0.0, 8760.0}) {
    CHECK(parse_double(format_double(x)).value() == x);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.380) == "0.38");
  CHECK(format_double(42.0) == "42");
}
