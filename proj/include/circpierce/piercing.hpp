#pragma once

// Piercing (representative candidate) sets for circular societies.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circpierce/counting.hpp"
#include "circpierce/spectrum.hpp"

namespace circpierce {

enum class PiercingMethod { greedy_linear, circular_alg2, exact };

std::string_view to_string(PiercingMethod m);
PiercingMethod parse_method(std::string_view text);

template <CircleScalar T>
struct PiercingResult {
  std::vector<Coord<T>> points;
  /// witness[voter] indexes the first point (in `points` order) inside that arc.
  std::vector<std::size_t> witness;
  PiercingMethod method = PiercingMethod::exact;
  bool optimal = false;
  /// Pairwise-disjoint voters found along the way. Its size bounds tau from
  /// below; when it equals points.size() it certifies optimality.
  std::vector<std::size_t> disjoint_family;

  std::size_t size() const { return points.size(); }
};

struct DisjointFamily {
  std::vector<std::size_t> arc_indices;
  bool certified_unique = false;
};

/// Leftmost-right-endpoint greedy on the society unrolled at `cut`, which no
/// arc may contain. Ties on the right endpoint go to the lowest voter index.
template <CircleScalar T>
PiercingResult<T> greedy_linear_pierce(const Society<T>& society, const Coord<T>& cut);

/// Same, cutting at the middle of the widest uncovered gap. Throws
/// InputError when the arcs cover the whole circle.
template <CircleScalar T>
PiercingResult<T> greedy_linear_pierce(const Society<T>& society);

/// Take `x`, drop every arc containing it, finish with the greedy. At most
/// one point more than optimal. `x` is left out when it pierces nothing.
template <CircleScalar T>
PiercingResult<T> circular_pierce_alg2(const Society<T>& society, const Coord<T>& x);

/// Minimum piercing set. Linear-equivalent societies go straight to the
/// greedy; otherwise every distinct first point inside a seed arc is tried.
template <CircleScalar T>
PiercingResult<T> exact_pierce(const Society<T>& society);

template <CircleScalar T>
int piercing_number(const Society<T>& society) {
  return static_cast<int>(exact_pierce(society).size());
}

/// Whether every arc contains at least one of the points.
template <CircleScalar T>
bool pierces_all(const Society<T>& society, std::span<const Coord<T>> points);

/// The pairwise-disjoint arcs picked by the greedy, whose union holds every
/// other arc's left endpoint. Certified unique when no arc contains another
/// and the leftmost reconstruction is forced at each step. Covered circles fall
/// back to the exact solver's family, never certified.
template <CircleScalar T>
DisjointFamily extract_disjoint_family(const Society<T>& society);

struct BoundCheck {
  std::string name;
  std::string statement;  // e.g. "tau <= 4"
  long long limit = 0;
  long long actual = 0;
  bool holds = false;
};

struct BoundReport {
  int tau = 0;
  int agreement = 0;
  bool linear_equivalent = false;
  std::vector<BoundCheck> checks;

  bool all_hold() const;
};

struct BoundOptions {
  /// Largest n for which (k,m)-agreeability is enumerated.
  int max_agreeability_n = 14;
};

/// Checks every applicable piercing and agreement bound against the exact
/// tau and a(S). A failing check is a defect.
template <CircleScalar T>
BoundReport verify_bounds(const Society<T>& society, BoundOptions opts = {});

}  // namespace circpierce
