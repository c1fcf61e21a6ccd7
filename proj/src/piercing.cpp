#include "circpierce/piercing.hpp"

#include <algorithm>
#include <string>

namespace circpierce {

std::string_view to_string(PiercingMethod m) {
  switch (m) {
    case PiercingMethod::greedy_linear:
      return "greedy_linear";
    case PiercingMethod::circular_alg2:
      return "circular_alg2";
    case PiercingMethod::exact:
      break;
  }
  return "exact";
}

PiercingMethod parse_method(std::string_view text) {
  if (text == "greedy" || text == "greedy_linear") return PiercingMethod::greedy_linear;
  if (text == "alg2" || text == "circular_alg2") return PiercingMethod::circular_alg2;
  if (text == "exact") return PiercingMethod::exact;
  throw InputError("unknown piercing method '" + std::string(text) + "' (expected greedy|alg2|exact)");
}

bool BoundReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds; });
}

namespace {

// Position of a point on the line obtained by cutting the circle at `origin`:
// points at or after the origin come first, then the ones that wrapped.
template <CircleScalar T>
struct FrameKey {
  int lap;
  const Coord<T>* at;

  friend bool operator<(const FrameKey& a, const FrameKey& b) {
    if (a.lap != b.lap) return a.lap < b.lap;
    return *a.at < *b.at;
  }
  friend bool operator==(const FrameKey& a, const FrameKey& b) {
    return a.lap == b.lap && *a.at == *b.at;
  }
};

template <CircleScalar T>
FrameKey<T> start_key(const Coord<T>& x, const Coord<T>& origin) {
  return {x < origin ? 1 : 0, &x};
}

// A right endpoint sitting exactly on the cut closes the unrolled line.
template <CircleScalar T>
FrameKey<T> end_key(const Coord<T>& x, const Coord<T>& origin) {
  return {(x < origin || x == origin) ? 1 : 0, &x};
}

template <CircleScalar T>
struct GreedyRun {
  std::vector<Coord<T>> points;
  std::vector<std::size_t> chosen;
};

template <CircleScalar T>
GreedyRun<T> greedy_run(const Society<T>& society, std::span<const std::size_t> voters,
                        const Coord<T>& cut) {
  struct Item {
    FrameKey<T> start;
    FrameKey<T> end;
    bool closed;
    std::size_t voter;
  };
  std::vector<Item> items;
  items.reserve(voters.size());
  for (std::size_t v : voters) {
    const Arc<T>& a = society[v];
    items.push_back({start_key(a.left(), cut), end_key(a.right(), cut), a.closed(), v});
  }
  // Leftmost right end first; a half-open end at r stops just short of r.
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (!(a.end == b.end)) return a.end < b.end;
    if (a.closed != b.closed) return !a.closed;
    return a.voter < b.voter;
  });

  GreedyRun<T> run;
  std::vector<bool> done(items.size(), false);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (done[i]) continue;
    done[i] = true;
    const Item& first = items[i];
    run.chosen.push_back(first.voter);
    const Coord<T>* point = first.closed ? &society[first.voter].right() : first.start.at;
    FrameKey<T> latest_start = first.start;
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (done[j]) continue;
      const bool pierced = first.closed ? !(first.end < items[j].start) : items[j].start < first.end;
      if (!pierced) continue;
      done[j] = true;
      if (!first.closed && latest_start < items[j].start) {
        latest_start = items[j].start;
        point = items[j].start.at;
      }
    }
    run.points.push_back(*point);
  }
  return run;
}

template <CircleScalar T>
std::vector<std::size_t> all_voters(const Society<T>& society) {
  std::vector<std::size_t> v(society.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

template <CircleScalar T>
std::vector<std::size_t> assign_witness(const Society<T>& society, const std::vector<Coord<T>>& points) {
  std::vector<std::size_t> witness(society.size());
  for (std::size_t v = 0; v < society.size(); ++v) {
    std::size_t p = 0;
    while (p < points.size() && !society.contains(v, points[p])) ++p;
    if (p == points.size()) {
      throw InvariantViolation("voter " + std::to_string(v) + " is not pierced by the result");
    }
    witness[v] = p;
  }
  return witness;
}

template <CircleScalar T>
PiercingResult<T> finish(const Society<T>& society, std::vector<Coord<T>> points, PiercingMethod method,
                         std::vector<std::size_t> family) {
  PiercingResult<T> r;
  r.witness = assign_witness(society, points);
  r.points = std::move(points);
  r.method = method;
  r.disjoint_family = std::move(family);
  r.optimal = r.disjoint_family.size() == r.points.size();
  return r;
}

// Take x, then finish the arcs x misses with the greedy cut at x.
template <CircleScalar T>
struct Completion {
  std::vector<Coord<T>> points;
  std::vector<std::size_t> family;
};

template <CircleScalar T>
Completion<T> complete_from(const Society<T>& society, const Coord<T>& x) {
  std::vector<std::size_t> rest;
  std::vector<std::size_t> through_x;
  for (std::size_t v = 0; v < society.size(); ++v) {
    (society.contains(v, x) ? through_x : rest).push_back(v);
  }
  GreedyRun<T> run = greedy_run(society, rest, x);
  Completion<T> out;
  out.family = std::move(run.chosen);
  if (through_x.empty()) {
    out.points = std::move(run.points);
    return out;
  }
  out.points.reserve(run.points.size() + 1);
  out.points.push_back(x);
  out.points.insert(out.points.end(), run.points.begin(), run.points.end());
  // One arc through x missing every greedy arc makes the family a matching bound.
  for (std::size_t v : through_x) {
    const bool clear = std::none_of(out.family.begin(), out.family.end(),
                                    [&](std::size_t f) { return society.intersect(v, f); });
    if (clear) {
      out.family.push_back(v);
      break;
    }
  }
  return out;
}

template <CircleScalar T>
bool lexicographically_less(std::vector<Coord<T>> a, std::vector<Coord<T>> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Candidate first points inside the seed arc: wherever an arc meeting the seed
// ends inside it (just short of the end for half-open arcs).
template <CircleScalar T>
std::vector<Coord<T>> first_point_candidates(const Society<T>& society, std::size_t seed) {
  const Arc<T>& a = society[seed];
  const Coord<T>& origin = a.left();
  std::vector<Coord<T>> inside;
  for (std::size_t v = 0; v < society.size(); ++v) {
    for (const Coord<T>* e : {&society[v].left(), &society[v].right()}) {
      if (society.contains(seed, *e)) inside.push_back(*e);
    }
  }
  auto frame_less = [&](const Coord<T>& x, const Coord<T>& y) {
    return start_key(x, origin) < start_key(y, origin);
  };
  std::sort(inside.begin(), inside.end(), frame_less);
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());

  // Last breakpoint strictly before `end`, walking from the seed's left end.
  auto before = [&](const Coord<T>& end) -> const Coord<T>& {
    const FrameKey<T> limit = end_key(end, origin);
    const Coord<T>* best = &inside.front();
    for (const auto& x : inside) {
      if (start_key(x, origin) < limit) best = &x;
    }
    return *best;
  };

  std::vector<Coord<T>> out;
  for (std::size_t v = 0; v < society.size(); ++v) {
    if (v != seed && !society.intersect(seed, v)) continue;
    const Arc<T>& b = society[v];
    if (b.closed()) {
      if (society.contains(seed, b.right())) out.push_back(b.right());
    } else if (v == seed || (society.contains(seed, b.right()) && !(b.right() == origin))) {
      out.push_back(ccw_midpoint(before(b.right()), b.right()));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Arc i lies inside arc j.
template <CircleScalar T>
bool nested_in(const Arc<T>& i, const Arc<T>& j) {
  if (!j.contains(i.left())) return false;
  const T reach = j.left().distance_to(i.left()) + i.length();
  if (reach < j.length()) return true;
  return reach == j.length() && (j.closed() || !i.closed());
}

}  // namespace

template <CircleScalar T>
PiercingResult<T> greedy_linear_pierce(const Society<T>& society, const Coord<T>& cut) {
  if (society.empty()) throw InputError("society has no arcs");
  for (std::size_t v = 0; v < society.size(); ++v) {
    if (society.contains(v, cut)) {
      throw InputError("cut point " + format_scalar(cut.value()) + " lies inside arc " + std::to_string(v));
    }
  }
  const auto voters = all_voters(society);
  GreedyRun<T> run = greedy_run(society, voters, cut);
  auto family = run.chosen;
  return finish(society, std::move(run.points), PiercingMethod::greedy_linear, std::move(family));
}

template <CircleScalar T>
PiercingResult<T> greedy_linear_pierce(const Society<T>& society) {
  if (society.empty()) throw InputError("society has no arcs");
  const auto cut = uncovered_point(society);
  if (!cut) throw InputError("society covers the whole circle; it is not linear-equivalent");
  return greedy_linear_pierce(society, *cut);
}

template <CircleScalar T>
PiercingResult<T> circular_pierce_alg2(const Society<T>& society, const Coord<T>& x) {
  if (society.empty()) throw InputError("society has no arcs");
  Completion<T> c = complete_from(society, x);
  return finish(society, std::move(c.points), PiercingMethod::circular_alg2, std::move(c.family));
}

template <CircleScalar T>
PiercingResult<T> exact_pierce(const Society<T>& society) {
  if (society.empty()) throw InputError("society has no arcs");
  if (const auto cut = uncovered_point(society)) {
    const auto voters = all_voters(society);
    GreedyRun<T> run = greedy_run(society, voters, *cut);
    std::sort(run.points.begin(), run.points.end());
    return finish(society, std::move(run.points), PiercingMethod::exact, std::move(run.chosen));
  }

  // Seed with the arc meeting the fewest others.
  std::size_t seed = 0;
  std::size_t seed_degree = society.size() + 1;
  for (std::size_t v = 0; v < society.size(); ++v) {
    std::size_t degree = 0;
    for (std::size_t w = 0; w < society.size(); ++w) {
      if (w != v && society.intersect(v, w)) ++degree;
    }
    if (degree < seed_degree) {
      seed = v;
      seed_degree = degree;
    }
  }

  std::optional<Completion<T>> best;
  for (const Coord<T>& x : first_point_candidates(society, seed)) {
    Completion<T> c = complete_from(society, x);
    if (!best || c.points.size() < best->points.size() ||
        (c.points.size() == best->points.size() && lexicographically_less(c.points, best->points))) {
      best = std::move(c);
    }
  }
  if (!best) throw InvariantViolation("seed arc produced no candidate first point");
  std::sort(best->points.begin(), best->points.end());
  PiercingResult<T> r = finish(society, std::move(best->points), PiercingMethod::exact, std::move(best->family));
  r.optimal = true;
  return r;
}

template <CircleScalar T>
bool pierces_all(const Society<T>& society, std::span<const Coord<T>> points) {
  for (std::size_t v = 0; v < society.size(); ++v) {
    const bool hit = std::any_of(points.begin(), points.end(), [&](const Coord<T>& p) { return society.contains(v, p); });
    if (!hit) return false;
  }
  return true;
}

template <CircleScalar T>
DisjointFamily extract_disjoint_family(const Society<T>& society) {
  if (society.empty()) throw InputError("society has no arcs");
  const auto cut = uncovered_point(society);
  if (!cut) return {exact_pierce(society).disjoint_family, false};

  const auto voters = all_voters(society);
  const GreedyRun<T> run = greedy_run(society, voters, *cut);
  DisjointFamily family{run.chosen, false};

  const std::size_t n = society.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && nested_in(society[i], society[j])) return family;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    const bool covered = std::any_of(run.chosen.begin(), run.chosen.end(),
                                     [&](std::size_t f) { return society.contains(f, society[v].left()); });
    if (!covered) return family;
  }

  // Rebuild leftmost-first: each pick is the leftmost arc clear of the previous
  // ones. A tie for leftmost means the choice was not forced.
  std::vector<std::size_t> order = voters;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return start_key(society[a].left(), *cut) < start_key(society[b].left(), *cut);
  });
  std::vector<std::size_t> rebuilt;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const std::size_t v = order[idx];
    const bool clear = std::none_of(rebuilt.begin(), rebuilt.end(),
                                    [&](std::size_t f) { return society.intersect(v, f); });
    if (!clear) continue;
    if (idx + 1 < order.size() && society[order[idx + 1]].left() == society[v].left()) return family;
    rebuilt.push_back(v);
  }
  std::vector<std::size_t> a = rebuilt;
  std::vector<std::size_t> b = run.chosen;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  family.certified_unique = a == b;
  return family;
}

template <CircleScalar T>
BoundReport verify_bounds(const Society<T>& society, BoundOptions opts) {
  if (society.empty()) throw InputError("society has no arcs");
  BoundReport report;
  const long long n = static_cast<long long>(society.size());
  report.tau = piercing_number(society);
  report.agreement = agreement_number(society);
  report.linear_equivalent = uncovered_point(society).has_value();
  const long long tau = report.tau;
  const long long a = report.agreement;

  auto add = [&](std::string name, std::string statement, long long limit, long long actual, bool holds) {
    report.checks.push_back({std::move(name), std::move(statement), limit, actual, holds});
  };

  if (const auto p = society.common_length()) {
    const T& len = *p;
    // Evenly spaced points 1/q apart pierce arcs of length >= 1/q.
    const long long q = [&] {
      if constexpr (std::same_as<T, Rational>) {
        return static_cast<long long>(ceil_of(Rational(1) / len));
      } else {
        return static_cast<long long>(std::ceil(1.0 / len));
      }
    }();
    add("fixed_length_q", "tau <= " + std::to_string(q), q, tau, tau <= q);

    if (!(len < T(n - 1) / T(n))) add("tau_one", "tau == 1", 1, tau, tau == 1);

    if (q >= 2 && len * T(q) == T(1) && n < 2 * q - 1) {
      add("sub_sharp", "tau <= " + std::to_string(q - 1), q - 1, tau, tau <= q - 1);
    }

    if (society.all_closed()) {
      if (n >= 2 && !(len * T(n) < T(1))) {
        add("pigeonhole", "tau <= " + std::to_string(n - 1), n - 1, tau, tau <= n - 1);
      }
      const long long floor_np = [&] {
        if constexpr (std::same_as<T, Rational>) {
          return static_cast<long long>(floor_of(len * T(n)));
        } else {
          return static_cast<long long>(std::floor(len * static_cast<double>(n)));
        }
      }();
      add("agreement_floor", "a(S) >= " + std::to_string(floor_np + 1), floor_np + 1, a, a >= floor_np + 1);

      if (n <= opts.max_agreeability_n) {
        for (long long k = 2; k <= n; ++k) {
          long long m;
          if constexpr (std::same_as<T, Rational>) {
            m = static_cast<long long>(ceil_of(Rational(k - 1) / len));
          } else {
            m = static_cast<long long>(std::ceil(static_cast<double>(k - 1) / len));
          }
          if (m > n) break;
          const bool ok = is_km_agreeable(society, static_cast<int>(k), static_cast<int>(m));
          add("guaranteed_agreeable", "(" + std::to_string(k) + "," + std::to_string(m) + ")-agreeable", m,
              ok ? 1 : 0, ok);
        }
      }
    }
  }

  if (n <= opts.max_agreeability_n) {
    // Smallest m making the society (k,m)-agreeable gives the sharpest bounds.
    for (long long k = 2; k <= n; ++k) {
      long long m_min = -1;
      for (long long m = k; m <= n; ++m) {
        if (is_km_agreeable(society, static_cast<int>(k), static_cast<int>(m))) {
          m_min = m;
          break;
        }
      }
      if (m_min < 0) continue;
      const std::string km = "(" + std::to_string(k) + "," + std::to_string(m_min) + ")";
      add("km_circular_piercing", km + ": tau <= " + std::to_string(m_min - k + 2), m_min - k + 2, tau,
          tau <= m_min - k + 2);
      // a(S) > n(k-1)/m
      add("km_circular_agreement", km + ": a(S) > n(k-1)/m", n * (k - 1), a * m_min, a * m_min > n * (k - 1));
      if (report.linear_equivalent) {
        add("km_linear_piercing", km + ": tau <= " + std::to_string(m_min - k + 1), m_min - k + 1, tau,
            tau <= m_min - k + 1);
        // a(S) >= n(k-1)/(m-1)
        add("km_linear_agreement", km + ": a(S) >= n(k-1)/(m-1)", n * (k - 1), a * (m_min - 1),
            a * (m_min - 1) >= n * (k - 1));
      }
    }
  }
  return report;
}

#define CIRCPIERCE_INSTANTIATE(T)                                                              \
  template PiercingResult<T> greedy_linear_pierce(const Society<T>&, const Coord<T>&);         \
  template PiercingResult<T> greedy_linear_pierce(const Society<T>&);                          \
  template PiercingResult<T> circular_pierce_alg2(const Society<T>&, const Coord<T>&);         \
  template PiercingResult<T> exact_pierce(const Society<T>&);                                  \
  template bool pierces_all(const Society<T>&, std::span<const Coord<T>>);                     \
  template DisjointFamily extract_disjoint_family(const Society<T>&);                          \
  template BoundReport verify_bounds(const Society<T>&, BoundOptions);

CIRCPIERCE_INSTANTIATE(Rational)
CIRCPIERCE_INSTANTIATE(double)

#undef CIRCPIERCE_INSTANTIATE

}  // namespace circpierce
