#include "circpierce/spectrum.hpp"

#include <string>

namespace circpierce {

std::string_view to_string(Closure c) { return c == Closure::closed ? "closed" : "half_open"; }

Closure parse_closure(std::string_view text) {
  if (text == "closed") return Closure::closed;
  if (text == "half_open") return Closure::half_open;
  throw InputError("unknown closure '" + std::string(text) + "' (expected closed|half_open)");
}

NumericKind kind(const SpectrumCoord& x) {
  return x.index() == 0 ? NumericKind::rational : NumericKind::floating;
}
NumericKind kind(const AnyArc& a) {
  return a.index() == 0 ? NumericKind::rational : NumericKind::floating;
}
NumericKind kind(const AnySociety& s) {
  return s.index() == 0 ? NumericKind::rational : NumericKind::floating;
}

SpectrumCoord normalize(std::string_view raw) {
  switch (classify_literal(raw)) {
    case LiteralClass::rational:
    case LiteralClass::integer:
      return Coord<Rational>::normalize(parse_rational(raw));
    case LiteralClass::decimal:
      break;
  }
  return Coord<double>::normalize(parse_decimal(raw));
}

SpectrumCoord parse_coord(std::string_view raw, NumericKind expected) {
  const LiteralClass cls = classify_literal(raw);
  if (expected == NumericKind::rational) {
    if (cls == LiteralClass::decimal) {
      throw KindMismatch("decimal coordinate '" + std::string(raw) + "' where rational expected");
    }
    return Coord<Rational>::normalize(parse_rational(raw));
  }
  if (cls == LiteralClass::rational) {
    throw KindMismatch("rational coordinate '" + std::string(raw) + "' where decimal expected");
  }
  return Coord<double>::normalize(parse_decimal(raw));
}

namespace {

template <class F>
SpectrumCoord binary(const SpectrumCoord& a, const SpectrumCoord& b, F&& f) {
  if (a.index() != b.index()) throw KindMismatch("cannot combine rational and floating coordinates");
  return std::visit(
      [&](const auto& x) -> SpectrumCoord {
        using C = std::decay_t<decltype(x)>;
        return f(x, std::get<C>(b));
      },
      a);
}

}  // namespace

SpectrumCoord add(const SpectrumCoord& a, const SpectrumCoord& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x + y.value(); });
}

SpectrumCoord subtract(const SpectrumCoord& a, const SpectrumCoord& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x - y.value(); });
}

SpectrumCoord distance(const SpectrumCoord& a, const SpectrumCoord& b) {
  return binary(a, b, [](const auto& x, const auto& y) {
    using C = std::decay_t<decltype(x)>;
    return C::normalize(x.distance_to(y));
  });
}

bool arc_contains(const AnyArc& a, const SpectrumCoord& x) {
  if (a.index() != x.index()) throw KindMismatch("arc and coordinate have different numeric kinds");
  return std::visit(
      [&](const auto& arc) {
        using C = std::decay_t<decltype(arc.left())>;
        return arc.contains(std::get<C>(x));
      },
      a);
}

bool arcs_intersect(const AnyArc& a, const AnyArc& b) {
  if (a.index() != b.index()) throw KindMismatch("arcs have different numeric kinds");
  return std::visit(
      [&](const auto& arc) {
        using A = std::decay_t<decltype(arc)>;
        return arcs_intersect(arc, std::get<A>(b));
      },
      a);
}

std::string format_coord(const SpectrumCoord& x) {
  return std::visit([](const auto& c) { return format_scalar(c.value()); }, x);
}

}  // namespace circpierce
