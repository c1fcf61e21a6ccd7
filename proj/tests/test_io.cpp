#include <doctest.h>

#include "circpierce/constructions.hpp"
#include "circpierce/society_io.hpp"

using namespace circpierce;

TEST_CASE("rational society round trip") {
  const AnySociety s = sharp_society(4);
  const AnySociety back = parse_society(dump_society(s));
  CHECK(kind(back) == NumericKind::rational);
  CHECK(std::get<Society<Rational>>(back) == std::get<Society<Rational>>(s));
}

TEST_CASE("decimal society round trip keeps every bit") {
  std::vector<Arc<double>> arcs{{Coord<double>::normalize(0.1), 0.3},
                                {Coord<double>::normalize(0.7123456789012345), 0.45, Closure::half_open}};
  const AnySociety s = Society<double>(arcs, "d");
  const AnySociety back = parse_society(dump_society(s));
  CHECK(kind(back) == NumericKind::floating);
  CHECK(std::get<Society<double>>(back) == std::get<Society<double>>(s));
}

TEST_CASE("closure defaults to closed; integers adopt the file kind") {
  const auto s = parse_society(R"({"arcs":[{"left":"0","length":"1/4"},{"left":"1/2","length":"1/4","closure":"half_open"}]})");
  const auto& r = std::get<Society<Rational>>(s);
  CHECK(r[0].closed());
  CHECK_FALSE(r[1].closed());
  const auto d = parse_society(R"({"arcs":[{"left":"0","length":"0.25"}]})");
  CHECK(kind(d) == NumericKind::floating);
}

TEST_CASE("malformed society files") {
  CHECK_THROWS_AS(parse_society(""), InputError);
  CHECK_THROWS_AS(parse_society("[]"), InputError);
  CHECK_THROWS_AS(parse_society(R"({"arcs":[]})"), InputError);
  CHECK_THROWS_AS(parse_society(R"({"arcs":[{"left":"0"}]})"), InputError);
  CHECK_THROWS_AS(parse_society(R"({"arcs":[{"left":0,"length":"1/2"}]})"), InputError);
  CHECK_THROWS_AS(parse_society(R"({"arcs":[{"left":"0","length":"1"}]})"), InputError);
  CHECK_THROWS_AS(parse_society(R"({"arcs":[{"left":"0","length":"1/2","closure":"open"}]})"), InputError);
  CHECK_THROWS_AS(parse_society(R"({"arcs":[{"left":"0.5","length":"1/2"}]})"), KindMismatch);
  CHECK_THROWS_AS(load_society("/nonexistent/society.json"), InputError);
}
