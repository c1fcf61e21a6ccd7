#pragma once

// Points, arcs and societies on the unit circle R/Z.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "circpierce/errors.hpp"
#include "circpierce/numeric.hpp"

namespace circpierce {

/// A point of the spectrum, always reduced into [0, 1).
template <CircleScalar T>
class Coord {
 public:
  Coord() = default;

  /// Reduces any finite value mod 1. Throws InputError on NaN/inf.
  static Coord normalize(const T& raw) { return Coord(reduce_mod1(raw)); }

  const T& value() const noexcept { return value_; }

  Coord operator+(const T& delta) const { return normalize(value_ + delta); }
  Coord operator-(const T& delta) const { return normalize(value_ - delta); }

  /// Counter-clockwise distance from this point to `other`, in [0, 1).
  T distance_to(const Coord& other) const {
    T d = other.value_ - value_;
    if (d < T(0)) d += T(1);
    return d;
  }

  /// Shorter of the two ways around.
  T circular_distance(const Coord& other) const {
    T d = distance_to(other);
    T back = T(1) - d;
    return back < d ? back : d;
  }

  friend bool operator==(const Coord& a, const Coord& b) { return a.value_ == b.value_; }
  friend bool operator<(const Coord& a, const Coord& b) { return a.value_ < b.value_; }

 private:
  explicit Coord(T v) : value_(std::move(v)) {}
  T value_{};
};

/// Point halfway along the counter-clockwise walk from `from` to `to`.
template <CircleScalar T>
Coord<T> ccw_midpoint(const Coord<T>& from, const Coord<T>& to) {
  T d = from.distance_to(to);
  if (d == T(0)) d = T(1);  // the full turn
  return from + d / T(2);
}

enum class Closure { closed, half_open };

std::string_view to_string(Closure c);
Closure parse_closure(std::string_view text);

/// An approval set: the arc from `left` running counter-clockwise for `length`.
/// Closed arcs contain both endpoints; half-open arcs exclude the right one.
template <CircleScalar T>
class Arc {
 public:
  Arc(Coord<T> left, T length, Closure closure = Closure::closed)
      : left_(std::move(left)), length_(std::move(length)), closure_(closure) {
    if constexpr (std::same_as<T, double>) {
      if (!std::isfinite(length_)) throw InputError("non-finite arc length");
    }
    if (!(T(0) < length_) || !(length_ < T(1))) {
      throw DomainError("arc length must lie in (0, 1), got " + format_scalar(length_));
    }
    right_ = right_of(left_, length_);
    if (right_ == left_) throw DomainError("arc degenerates to a point in floating arithmetic");
  }

  const Coord<T>& left() const noexcept { return left_; }
  const Coord<T>& right() const noexcept { return right_; }
  const T& length() const noexcept { return length_; }
  Closure closure() const noexcept { return closure_; }
  bool closed() const noexcept { return closure_ == Closure::closed; }

  /// True when the arc passes through the identified point 0 == 1 after its left end.
  bool wraps() const { return right_ < left_; }

  /// Membership with exact comparisons against the stored endpoints. A positive
  /// `eps` (floating kind only) also admits points within eps of a closed end.
  bool contains(const Coord<T>& x, double eps = 0.0) const {
    const T& v = x.value();
    const bool after_left = !(v < left_.value());
    const bool before_right = closed() ? !(right_.value() < v) : v < right_.value();
    const bool inside = wraps() ? (after_left || before_right) : (after_left && before_right);
    if constexpr (std::same_as<T, double>) {
      if (!inside && eps > 0.0) {
        if (left_.circular_distance(x) <= eps) return true;
        if (closed() && right_.circular_distance(x) <= eps) return true;
      }
    }
    return inside;
  }

  Arc rotated(const T& shift) const { return Arc(left_ + shift, length_, closure_); }

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.left_ == b.left_ && a.length_ == b.length_ && a.closure_ == b.closure_;
  }

 private:
  static Coord<T> right_of(const Coord<T>& left, const T& length) {
    if constexpr (std::same_as<T, double>) {
      // Keep the sum unreduced by floor(): right endpoints are compared
      // bit-for-bit against points derived from them later.
      double s = left.value() + length;
      if (s >= 1.0) s -= 1.0;
      return Coord<double>::normalize(s);
    } else {
      return left + length;
    }
  }

  Coord<T> left_;
  T length_;
  Closure closure_;
  Coord<T> right_;
};

template <CircleScalar T>
bool arc_contains(const Arc<T>& a, const Coord<T>& x, double eps = 0.0) {
  return a.contains(x, eps);
}

/// Two arcs meet iff one of them contains the other's left endpoint; closed
/// arcs touching at a single point intersect.
template <CircleScalar T>
bool arcs_intersect(const Arc<T>& a, const Arc<T>& b, double eps = 0.0) {
  return a.contains(b.left(), eps) || b.contains(a.left(), eps);
}

/// An ordered collection of arcs; the index of an arc is its voter id.
template <CircleScalar T>
class Society {
 public:
  Society() = default;
  explicit Society(std::vector<Arc<T>> arcs, std::string name = {})
      : arcs_(std::move(arcs)), name_(std::move(name)) {}

  const std::vector<Arc<T>>& arcs() const noexcept { return arcs_; }
  const Arc<T>& operator[](std::size_t voter) const { return arcs_.at(voter); }
  std::size_t size() const noexcept { return arcs_.size(); }
  bool empty() const noexcept { return arcs_.empty(); }
  const std::string& name() const noexcept { return name_; }

  /// Containment slack applied by society-level predicates. Exact kinds
  /// accept only zero.
  double tolerance() const noexcept { return tolerance_; }
  Society& set_tolerance(double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("tolerance must be >= 0");
    if constexpr (std::same_as<T, Rational>) {
      if (eps != 0.0) throw DomainError("rational societies are exact; tolerance must be 0");
    }
    tolerance_ = eps;
    return *this;
  }

  bool contains(std::size_t voter, const Coord<T>& x) const {
    return arcs_[voter].contains(x, tolerance_);
  }
  bool intersect(std::size_t a, std::size_t b) const {
    return arcs_intersect(arcs_[a], arcs_[b], tolerance_);
  }

  /// The shared length when every arc has the same one.
  std::optional<T> common_length() const {
    if (arcs_.empty()) return std::nullopt;
    for (const auto& a : arcs_) {
      if (!(a.length() == arcs_.front().length())) return std::nullopt;
    }
    return arcs_.front().length();
  }
  bool fixed_length() const { return common_length().has_value(); }

  bool all_closed() const {
    for (const auto& a : arcs_) {
      if (!a.closed()) return false;
    }
    return true;
  }

  T total_length() const {
    T sum(0);
    for (const auto& a : arcs_) sum += a.length();
    return sum;
  }

  Society subset(std::span<const std::size_t> voters) const {
    std::vector<Arc<T>> picked;
    picked.reserve(voters.size());
    for (auto v : voters) picked.push_back(arcs_.at(v));
    Society out(std::move(picked), name_);
    out.tolerance_ = tolerance_;
    return out;
  }

  friend bool operator==(const Society& a, const Society& b) {
    return a.arcs_ == b.arcs_ && a.name_ == b.name_;
  }

 private:
  std::vector<Arc<T>> arcs_;
  std::string name_;
  double tolerance_ = 0.0;
};

/// Kind-tagged coordinate, arc and society for data whose kind is only known
/// at runtime (files, command lines). Operations on mixed kinds throw KindMismatch.
using SpectrumCoord = std::variant<Coord<Rational>, Coord<double>>;
using AnyArc = std::variant<Arc<Rational>, Arc<double>>;
using AnySociety = std::variant<Society<Rational>, Society<double>>;

NumericKind kind(const SpectrumCoord& x);
NumericKind kind(const AnyArc& a);
NumericKind kind(const AnySociety& s);

/// Parses "3/7", "-1/4", "1.25", ... and reduces mod 1.
SpectrumCoord normalize(std::string_view raw);

/// Parses a coordinate that must be of the given kind. Integer literals adopt it.
SpectrumCoord parse_coord(std::string_view raw, NumericKind expected);

SpectrumCoord add(const SpectrumCoord& a, const SpectrumCoord& b);
SpectrumCoord subtract(const SpectrumCoord& a, const SpectrumCoord& b);
/// Counter-clockwise distance from a to b, as a coordinate of the same kind.
SpectrumCoord distance(const SpectrumCoord& a, const SpectrumCoord& b);

bool arc_contains(const AnyArc& a, const SpectrumCoord& x);
bool arcs_intersect(const AnyArc& a, const AnyArc& b);

std::string format_coord(const SpectrumCoord& x);

template <CircleScalar T>
const Coord<T>& coord_as(const SpectrumCoord& x) {
  if (const auto* c = std::get_if<Coord<T>>(&x)) return *c;
  throw KindMismatch(std::string("expected a ") + std::string(to_string(kind_of<T>)) +
                     " coordinate, got a " + std::string(to_string(kind(x))) + " one");
}

}  // namespace circpierce
