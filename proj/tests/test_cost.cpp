#include <doctest.h>

#include "cost.hpp"
#include "error.hpp"

using namespace anarchy;

TEST_CASE("rational parsing accepts integers and fractions") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("-3") == Rat(-3));
  CHECK(parse_rational("7/2") == Rat(7, 2));
  CHECK(parse_rational("0") == Rat(0));
  CHECK(parse_rational("-9/4") == Rat(-9, 4));
}

TEST_CASE("rational parsing rejects junk") {
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK_THROWS_AS(parse_rational("1.5"), InputError);
  CHECK_THROWS_AS(parse_rational("3/"), InputError);
  CHECK_THROWS_AS(parse_rational("/2"), InputError);
  CHECK_THROWS_AS(parse_rational("3/0"), InputError);
  CHECK_THROWS_AS(parse_rational("2x"), InputError);
  CHECK_THROWS_AS(parse_rational(" 2"), InputError);
  CHECK_THROWS_AS(parse_rational("2 "), InputError);
}

TEST_CASE("rational formatting round-trips") {
  CHECK(format_rational(Rat(3)) == "3");
  CHECK(format_rational(Rat(7, 2)) == "7/2");
  CHECK(format_rational(Rat(-7, 2)) == "-7/2");
  CHECK(format_rational(Rat(6, 4)) == "3/2");
  CHECK(parse_rational(format_rational(Rat(22, 7))) == Rat(22, 7));
}

TEST_CASE("pow2 grows exactly") {
  CHECK(pow2(0) == Rat(1));
  CHECK(pow2(5) == Rat(32));
  CHECK(pow2(70) == Rat(Int(1) << 70));
}

TEST_CASE("cost values order with unbounded on top") {
  CostValue two(2), seven_halves(Rat(7, 2)), inf = CostValue::unbounded();
  CHECK(two < seven_halves);
  CHECK(seven_halves < inf);
  CHECK(inf == CostValue::unbounded());
  CHECK_FALSE(inf < inf);
  CHECK((two + seven_halves) == CostValue(Rat(11, 2)));
  CHECK((two + inf).is_unbounded());
  CHECK_THROWS_AS(inf.value(), InputError);
}

TEST_CASE("cost values scale and print") {
  CHECK(CostValue(Rat(7, 2)).str() == "7/2");
  CHECK(CostValue::unbounded().str() == "inf");
  CHECK(CostValue(6).scaled(Rat(1, 3)) == CostValue(2));
  CHECK(CostValue::unbounded().scaled(Rat(1, 3)).is_unbounded());
  CHECK(CostValue::parse("inf").is_unbounded());
  CHECK(CostValue::parse("7/2") == CostValue(Rat(7, 2)));
  CHECK_THROWS_AS(CostValue::parse("-1"), InputError);
}

TEST_CASE("table validation pinpoints the first defect") {
  auto ok = validate_table({CostValue(0), CostValue(2), CostValue(2), CostValue::unbounded()});
  CHECK_FALSE(ok.has_value());

  auto decreasing = validate_table({CostValue(0), CostValue(2), CostValue(1)});
  REQUIRE(decreasing.has_value());
  CHECK(decreasing->index == 2);

  auto bad_origin = validate_table({CostValue(1), CostValue(2)});
  REQUIRE(bad_origin.has_value());
  CHECK(bad_origin->index == 0);

  auto too_short = validate_table({CostValue(0)});
  REQUIRE(too_short.has_value());

  auto inf_then_finite =
      validate_table({CostValue(0), CostValue::unbounded(), CostValue(3)});
  REQUIRE(inf_then_finite.has_value());
  CHECK(inf_then_finite->index == 2);
}

TEST_CASE("cost tables evaluate within range only") {
  CostTable t({CostValue(0), CostValue(3), CostValue(7)});
  CHECK(t.l_max() == 2);
  CHECK(t.eval(0) == CostValue(0));
  CHECK(t.eval(2) == CostValue(7));
  CHECK_THROWS_AS(t.eval(3), InputError);
  CHECK_THROWS_AS(t.eval(-1), InputError);
  CHECK(t.scaled(Rat(1, 7)).eval(2) == CostValue(1));
  CHECK_THROWS_AS(CostTable({CostValue(0), CostValue(2), CostValue(1)}), InputError);
}
