#include "circpierce/constructions.hpp"

#include <map>
#include <utility>

namespace circpierce {

namespace {

Coord<Rational> at(std::int64_t num, std::int64_t den) { return Coord<Rational>::normalize(make_rational(num, den)); }

Arc<Rational> closed_arc(std::int64_t left_num, std::int64_t right_num, std::int64_t den) {
  return Arc<Rational>(at(left_num, den), make_rational(right_num - left_num, den), Closure::closed);
}

// Arcs given as counter-clockwise degree ranges [from, to].
Society<Rational> degrees(std::vector<std::pair<int, int>> ranges, std::string name) {
  std::vector<Arc<Rational>> arcs;
  for (auto [from, to] : ranges) arcs.push_back(closed_arc(from, to, 360));
  return Society<Rational>(std::move(arcs), std::move(name));
}

// Intersection graph is a 5-cycle: any three arcs include a meeting pair,
// no point lies in three.
Society<Rational> fig1_circular() {
  std::vector<Arc<Rational>> arcs{
      {at(5, 6), make_rational(1, 3)},     // orange
      {at(1, 3), make_rational(7, 18)},    // violet
      {at(35, 36), make_rational(11, 36)}, // blue
      {at(2, 9), make_rational(5, 18)},    // green
      {at(5, 9), make_rational(13, 36)},   // red
  };
  return Society<Rational>(std::move(arcs), "fig1_circular");
}

// Five intervals on a segment; three share a point, two points suffice.
Society<Rational> fig1_linear() {
  std::vector<Arc<Rational>> arcs{
      closed_arc(10, 60, 100), closed_arc(70, 90, 100), closed_arc(20, 40, 100),
      closed_arc(46, 80, 100), closed_arc(16, 64, 100),
  };
  return Society<Rational>(std::move(arcs), "fig1_linear");
}

// Nothing covers 80 degrees, so cutting there gives a line.
Society<Rational> fig_linear_equivalent() {
  return degrees({{-70, 30}, {110, 260}, {-10, 50}, {130, 240}, {200, 330}}, "fig_linear_equivalent");
}

// Thirteen intervals in hundredths: three blocks of four overlapping sets and a
// last one.
Society<Rational> fig_alg1() {
  std::vector<Arc<Rational>> arcs;
  for (int g = 0; g < 3; ++g) {
    const int o = 20 * g;
    arcs.push_back(closed_arc(o + 2, o + 8, 100));
    arcs.push_back(closed_arc(o + 4, o + 12, 100));
    arcs.push_back(closed_arc(o + 6, o + 14, 100));
    arcs.push_back(closed_arc(o + 8, o + 23, 100));
  }
  arcs.push_back(closed_arc(62, 70, 100));
  return Society<Rational>(std::move(arcs), "fig_alg1");
}

// Nine arcs covering the circle. The circular heuristic started at 90 degrees
// costs one extra point; started at 42 degrees it does not.
Society<Rational> fig_alg2() {
  return degrees({{75, 160},
                  {30, 105},
                  {75, 160},
                  {30, 105},
                  {-20, 50},
                  {-80, 0},
                  {135, 240},
                  {200, 300},
                  {270, 330}},
                 "fig_alg2");
}

// Four arcs of length 11/16 a quarter turn apart.
Society<Rational> fig_4voter() {
  const Rational p = make_rational(11, 16);
  std::vector<Arc<Rational>> arcs{
      {at(0, 1), p}, {at(3, 4), p}, {at(1, 2), p}, {at(1, 4), p}};
  return Society<Rational>(std::move(arcs), "fig_4voter");
}

// Counting function peaks at 4 on [2/5, 1/2] and bottoms at 1.
Society<Rational> fig_counting() {
  std::vector<Arc<Rational>> arcs{
      {at(4, 5), make_rational(7, 10)},
      closed_arc(2, 7, 10),
      closed_arc(3, 6, 10),
      closed_arc(4, 9, 10),
  };
  return Society<Rational>(std::move(arcs), "fig_counting");
}

// Eight quarter-turn arcs.
Society<Rational> fig_fixed_length() {
  return degrees({{0, 90}, {160, 250}, {80, 170}, {300, 390}, {190, 280}, {40, 130}, {270, 360}, {160, 250}},
                 "fig_fixed_length");
}

using Builder = Society<Rational> (*)();

const std::map<std::string, Builder, std::less<>>& builders() {
  static const std::map<std::string, Builder, std::less<>> table{
      {"fig1_circular", fig1_circular},
      {"fig1_linear", fig1_linear},
      {"fig_linear_equivalent", fig_linear_equivalent},
      {"fig_alg1", fig_alg1},
      {"fig_alg2", fig_alg2},
      {"fig_4voter", fig_4voter},
      {"fig_counting", fig_counting},
      {"fig_fixed_length", fig_fixed_length},
  };
  return table;
}

}  // namespace

Society<Rational> uniform_society(int n, int h, std::optional<Rational> closed_epsilon) {
  ConstructionSpec{ConstructionKind::uniform, n, h, 0, {}, closed_epsilon}.validate();
  Rational length = make_rational(h, n);
  Closure closure = Closure::half_open;
  if (closed_epsilon) {
    length -= *closed_epsilon;
    closure = Closure::closed;
  }
  std::vector<Arc<Rational>> arcs;
  arcs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) arcs.emplace_back(at(i, n), length, closure);
  return Society<Rational>(std::move(arcs), "U(" + std::to_string(n) + "," + std::to_string(h) + ")");
}

Society<Rational> sharp_society(int q) {
  ConstructionSpec{ConstructionKind::sharp, 0, 0, q, {}, std::nullopt}.validate();
  const Rational step = make_rational(1, q) + make_rational(1, 2LL * q * q);
  const Rational length = make_rational(1, q);
  std::vector<Arc<Rational>> arcs;
  for (int i = 0; i < 2 * q - 1; ++i) {
    arcs.emplace_back(Coord<Rational>::normalize(step * i), length, Closure::closed);
  }
  return Society<Rational>(std::move(arcs), "sharp(" + std::to_string(q) + ")");
}

Society<Rational> figure_society(std::string_view id) {
  const auto& table = builders();
  auto it = table.find(id);
  if (it == table.end()) throw InputError("unknown figure id '" + std::string(id) + "'");
  return it->second();
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : builders()) out.push_back(id);
    return out;
  }();
  return ids;
}

void ConstructionSpec::validate() const {
  switch (kind) {
    case ConstructionKind::uniform:
      if (n < 2 || h < 1 || h >= n) {
        throw DomainError("uniform society needs 1 <= h < n, got n=" + std::to_string(n) + " h=" + std::to_string(h));
      }
      if (closed_epsilon && (!(Rational(0) < *closed_epsilon) || !(*closed_epsilon < make_rational(h, n)))) {
        throw DomainError("closed_epsilon must lie in (0, h/n)");
      }
      break;
    case ConstructionKind::sharp:
      if (q < 2) throw DomainError("sharp society needs q >= 2, got " + std::to_string(q));
      if (q > 1'000'000) throw DomainError("q too large");
      break;
    case ConstructionKind::figure_example:
      if (!builders().contains(id)) throw InputError("unknown figure id '" + id + "'");
      break;
  }
}

Society<Rational> build(const ConstructionSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ConstructionKind::uniform:
      return uniform_society(spec.n, spec.h, spec.closed_epsilon);
    case ConstructionKind::sharp:
      return sharp_society(spec.q);
    case ConstructionKind::figure_example:
      break;
  }
  return figure_society(spec.id);
}

}  // namespace circpierce
