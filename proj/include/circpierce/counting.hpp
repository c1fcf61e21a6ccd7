#pragma once

// The local counting function C(x) of a society: how many arcs contain x.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "circpierce/spectrum.hpp"

namespace circpierce {

/// Distinct arc endpoints in increasing order, with every arc's endpoints
/// expressed as breakpoint indices. Under a positive tolerance, endpoints
/// closer than the tolerance share one breakpoint.
template <CircleScalar T>
struct Arrangement {
  std::vector<Coord<T>> breakpoints;
  std::vector<std::size_t> left_index;   // per voter
  std::vector<std::size_t> right_index;  // per voter
  double tolerance = 0.0;

  static Arrangement build(const Society<T>& society);

  /// Index of the breakpoint equal to x (within tolerance), if any.
  std::optional<std::size_t> breakpoint_at(const Coord<T>& x) const;
  /// Index i of the gap (b_i, b_{i+1}) holding x when x is not a breakpoint;
  /// the last gap wraps through 0.
  std::size_t gap_containing(const Coord<T>& x) const;
};

/// One maximal constant piece of C. A piece may wrap through 0 (start > end);
/// a piece spanning the whole circle has start == end and full_circle set.
template <CircleScalar T>
struct Piece {
  Coord<T> start;
  Coord<T> end;
  bool start_closed = false;
  bool end_closed = false;
  int value = 0;
  bool full_circle = false;

  T length() const;
  bool is_point() const;
  /// Euler characteristic: closed 1, half-open 0, open -1, whole circle 0.
  int euler_characteristic() const;
};

/// C(x) as values on the atoms of the arrangement: every breakpoint b_i and
/// every open gap (b_i, b_{i+1}), the last gap wrapping through 0.
template <CircleScalar T>
class StepFunction {
 public:
  StepFunction(Arrangement<T> arrangement, std::vector<int> point_values,
               std::vector<int> gap_values, bool from_closed_arcs);

  const std::vector<Coord<T>>& breakpoints() const { return arr_.breakpoints; }
  const Arrangement<T>& arrangement() const { return arr_; }
  const std::vector<int>& point_values() const { return point_values_; }
  const std::vector<int>& gap_values() const { return gap_values_; }

  int operator()(const Coord<T>& x) const;

  /// Maximal pieces in circular order, starting from the piece holding 0.
  const std::vector<Piece<T>>& pieces() const { return pieces_; }

  int max_value() const;
  int min_value() const;
  bool constant() const { return pieces_.size() == 1 && pieces_.front().full_circle; }
  std::size_t arc_count() const { return arr_.left_index.size(); }
  bool from_closed_arcs() const { return closed_arcs_; }

 private:
  Arrangement<T> arr_;
  std::vector<int> point_values_;
  std::vector<int> gap_values_;
  bool closed_arcs_;
  std::vector<Piece<T>> pieces_;
};

template <CircleScalar T>
struct ExtremumIntervals {
  std::vector<Piece<T>> lmax;  // closed, strictly above both neighbours
  std::vector<Piece<T>> lmin;  // open, strictly below both neighbours

  long long lmax_sum() const;
  long long lmin_sum() const;
};

template <CircleScalar T>
StepFunction<T> counting_function(const Society<T>& society);

/// Integral of C over the circle: the total arc length.
template <CircleScalar T>
T riemann_integral(const StepFunction<T>& c);

/// Sum over values r of r * chi(C^-1(r)). Requires closed arcs.
template <CircleScalar T>
long long euler_integral(const StepFunction<T>& c);

/// Local maximum and minimum intervals. Requires closed arcs and a
/// non-constant C; a constant C raises InvariantViolation.
template <CircleScalar T>
ExtremumIntervals<T> extremum_intervals(const StepFunction<T>& c);

/// Largest number of arcs sharing a point.
template <CircleScalar T>
int agreement_number(const Society<T>& society);

/// Midpoint of the longest stretch of the circle no arc covers.
template <CircleScalar T>
std::optional<Coord<T>> uncovered_point(const Society<T>& society);

struct AgreeabilityOptions {
  /// Allow enumerations beyond max_subsets when n > 20.
  bool force = false;
  std::uint64_t max_subsets = 1'000'000;
};

/// Whether every m of the arcs include k sharing a point. Enumerates all
/// m-subsets; for n > 20 refuses with TooLarge beyond opts.max_subsets.
template <CircleScalar T>
bool is_km_agreeable(const Society<T>& society, int k, int m, AgreeabilityOptions opts = {});

std::uint64_t binomial(int n, int k);

}  // namespace circpierce
