#include "circpierce/counting.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <string>

namespace circpierce {

namespace {

template <CircleScalar T>
bool within(const Coord<T>& a, const Coord<T>& b, double eps) {
  if (a == b) return true;
  if constexpr (std::same_as<T, double>) {
    return eps > 0.0 && a.circular_distance(b) <= eps;
  } else {
    return false;
  }
}

}  // namespace

template <CircleScalar T>
Arrangement<T> Arrangement<T>::build(const Society<T>& society) {
  if (society.empty()) throw InputError("society has no arcs");
  struct Endpoint {
    const Coord<T>* at;
    std::size_t voter;
    bool is_left;
  };
  std::vector<Endpoint> ends;
  ends.reserve(2 * society.size());
  for (std::size_t v = 0; v < society.size(); ++v) {
    ends.push_back({&society[v].left(), v, true});
    ends.push_back({&society[v].right(), v, false});
  }
  std::sort(ends.begin(), ends.end(),
            [](const Endpoint& a, const Endpoint& b) { return *a.at < *b.at; });

  Arrangement arr;
  arr.tolerance = society.tolerance();
  arr.left_index.assign(society.size(), 0);
  arr.right_index.assign(society.size(), 0);
  std::vector<std::size_t> cluster_of(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (arr.breakpoints.empty() || !within(arr.breakpoints.back(), *ends[i].at, arr.tolerance)) {
      arr.breakpoints.push_back(*ends[i].at);
    }
    cluster_of[i] = arr.breakpoints.size() - 1;
  }
  // A cluster just below 1 may sit within tolerance of the one at 0.
  const std::size_t last = arr.breakpoints.size() - 1;
  const bool merge_wrap = last > 0 && arr.tolerance > 0.0 &&
                          within(arr.breakpoints.back(), arr.breakpoints.front(), arr.tolerance);
  if (merge_wrap) arr.breakpoints.pop_back();

  for (std::size_t i = 0; i < ends.size(); ++i) {
    std::size_t c = cluster_of[i];
    if (merge_wrap && c == last) c = 0;
    (ends[i].is_left ? arr.left_index : arr.right_index)[ends[i].voter] = c;
  }
  for (std::size_t v = 0; v < society.size(); ++v) {
    if (arr.left_index[v] == arr.right_index[v]) {
      throw InputError("arc " + std::to_string(v) + " collapses to a point under the tolerance");
    }
  }
  return arr;
}

template <CircleScalar T>
std::optional<std::size_t> Arrangement<T>::breakpoint_at(const Coord<T>& x) const {
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  const std::size_t m = breakpoints.size();
  const std::size_t hi = static_cast<std::size_t>(it - breakpoints.begin());
  for (std::size_t cand : {hi % m, (hi + m - 1) % m}) {
    if (within(breakpoints[cand], x, tolerance)) return cand;
  }
  return std::nullopt;
}

template <CircleScalar T>
std::size_t Arrangement<T>::gap_containing(const Coord<T>& x) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  if (it == breakpoints.begin()) return breakpoints.size() - 1;
  return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

template <CircleScalar T>
T Piece<T>::length() const {
  if (full_circle) return T(1);
  if (start == end) return is_point() ? T(0) : T(1);
  return start.distance_to(end);
}

template <CircleScalar T>
bool Piece<T>::is_point() const {
  return !full_circle && start == end && start_closed && end_closed;
}

template <CircleScalar T>
int Piece<T>::euler_characteristic() const {
  if (full_circle) return 0;
  if (start_closed && end_closed) return 1;
  if (!start_closed && !end_closed) return -1;
  return 0;
}

template <CircleScalar T>
StepFunction<T>::StepFunction(Arrangement<T> arrangement, std::vector<int> point_values,
                              std::vector<int> gap_values, bool from_closed_arcs)
    : arr_(std::move(arrangement)),
      point_values_(std::move(point_values)),
      gap_values_(std::move(gap_values)),
      closed_arcs_(from_closed_arcs) {
  const std::size_t m = arr_.breakpoints.size();
  if (m == 0 || point_values_.size() != m || gap_values_.size() != m) {
    throw InvariantViolation("step function atoms do not match breakpoints");
  }
  // Atom 2i is the point b_i, atom 2i+1 the gap (b_i, b_{i+1}).
  const std::size_t atoms = 2 * m;
  auto value = [&](std::size_t a) { return a % 2 == 0 ? point_values_[a / 2] : gap_values_[a / 2]; };

  std::size_t first = atoms;
  for (std::size_t a = 0; a < atoms; ++a) {
    if (value(a) != value((a + atoms - 1) % atoms)) {
      first = a;
      break;
    }
  }
  if (first == atoms) {
    Piece<T> whole{arr_.breakpoints[0], arr_.breakpoints[0], true, false, value(0), true};
    pieces_.push_back(whole);
    return;
  }

  struct Run {
    std::size_t from, to;
  };
  std::vector<Run> runs;
  std::size_t a = first;
  for (std::size_t done = 0; done < atoms;) {
    std::size_t b = a;
    std::size_t len = 1;
    while (len < atoms - done && value((b + 1) % atoms) == value(a)) {
      b = (b + 1) % atoms;
      ++len;
    }
    runs.push_back({a, b});
    done += len;
    a = (b + 1) % atoms;
  }

  // Rotate so the run holding 0 comes first.
  const Coord<T> zero{};
  std::size_t zero_atom;
  if (auto bp = arr_.breakpoint_at(zero)) {
    zero_atom = 2 * *bp;
  } else {
    zero_atom = 2 * arr_.gap_containing(zero) + 1;
  }
  auto holds = [&](const Run& r, std::size_t atom) {
    const std::size_t span = (r.to + atoms - r.from) % atoms;
    return (atom + atoms - r.from) % atoms <= span;
  };
  const auto zero_run = std::find_if(runs.begin(), runs.end(), [&](const Run& r) { return holds(r, zero_atom); });
  std::rotate(runs.begin(), zero_run, runs.end());

  for (const Run& r : runs) {
    Piece<T> p;
    if (r.from % 2 == 0) {
      p.start = arr_.breakpoints[r.from / 2];
      p.start_closed = true;
    } else {
      p.start = arr_.breakpoints[r.from / 2];
      p.start_closed = false;
    }
    if (r.to % 2 == 0) {
      p.end = arr_.breakpoints[r.to / 2];
      p.end_closed = true;
    } else {
      p.end = arr_.breakpoints[(r.to / 2 + 1) % m];
      p.end_closed = false;
    }
    p.value = value(r.from);
    pieces_.push_back(p);
  }
}

template <CircleScalar T>
int StepFunction<T>::operator()(const Coord<T>& x) const {
  if (auto bp = arr_.breakpoint_at(x)) return point_values_[*bp];
  return gap_values_[arr_.gap_containing(x)];
}

template <CircleScalar T>
int StepFunction<T>::max_value() const {
  int best = 0;
  for (const auto& p : pieces_) best = std::max(best, p.value);
  return best;
}

template <CircleScalar T>
int StepFunction<T>::min_value() const {
  int best = std::numeric_limits<int>::max();
  for (const auto& p : pieces_) best = std::min(best, p.value);
  return best;
}

template <CircleScalar T>
long long ExtremumIntervals<T>::lmax_sum() const {
  long long s = 0;
  for (const auto& p : lmax) s += p.value;
  return s;
}

template <CircleScalar T>
long long ExtremumIntervals<T>::lmin_sum() const {
  long long s = 0;
  for (const auto& p : lmin) s += p.value;
  return s;
}

template <CircleScalar T>
StepFunction<T> counting_function(const Society<T>& society) {
  Arrangement<T> arr = Arrangement<T>::build(society);
  const std::size_t m = arr.breakpoints.size();
  std::vector<int> starts(m, 0), ends_closed(m, 0), ends_open(m, 0);
  int current = 0;  // on the gap wrapping through 0
  for (std::size_t v = 0; v < society.size(); ++v) {
    const std::size_t li = arr.left_index[v];
    const std::size_t ri = arr.right_index[v];
    ++starts[li];
    ++(society[v].closed() ? ends_closed : ends_open)[ri];
    if (ri < li) ++current;
  }
  const int wrap_value = current;
  std::vector<int> point_values(m), gap_values(m);
  for (std::size_t i = 0; i < m; ++i) {
    point_values[i] = current + starts[i] - ends_open[i];
    gap_values[i] = point_values[i] - ends_closed[i];
    current = gap_values[i];
  }
  if (current != wrap_value) throw InvariantViolation("counting sweep did not close up");
  return StepFunction<T>(std::move(arr), std::move(point_values), std::move(gap_values),
                         society.all_closed());
}

template <CircleScalar T>
T riemann_integral(const StepFunction<T>& c) {
  const auto& bps = c.breakpoints();
  const std::size_t m = bps.size();
  if (m == 1) return T(c.gap_values()[0]);
  T total(0);
  for (std::size_t i = 0; i < m; ++i) {
    const T width = bps[i].distance_to(bps[(i + 1) % m]);
    total += width * T(c.gap_values()[i]);
  }
  return total;
}

template <CircleScalar T>
long long euler_integral(const StepFunction<T>& c) {
  if (!c.from_closed_arcs()) throw DomainError("the Euler integral identity needs closed arcs");
  // chi of each level set C^-1(r), summed over its maximal intervals
  std::map<int, long long> level_chi;
  for (const auto& p : c.pieces()) level_chi[p.value] += p.euler_characteristic();
  long long total = 0;
  for (const auto& [r, chi] : level_chi) total += static_cast<long long>(r) * chi;
  return total;
}

template <CircleScalar T>
ExtremumIntervals<T> extremum_intervals(const StepFunction<T>& c) {
  if (!c.from_closed_arcs()) throw DomainError("extremum intervals need closed arcs");
  if (c.constant()) throw InvariantViolation("counting function of closed arcs cannot be constant");
  const auto& pieces = c.pieces();
  const std::size_t k = pieces.size();
  ExtremumIntervals<T> out;
  for (std::size_t j = 0; j < k; ++j) {
    const int v = pieces[j].value;
    const int before = pieces[(j + k - 1) % k].value;
    const int after = pieces[(j + 1) % k].value;
    if (v > before && v > after) {
      if (!(pieces[j].start_closed && pieces[j].end_closed)) {
        throw InvariantViolation("local maximum interval is not closed");
      }
      out.lmax.push_back(pieces[j]);
    } else if (v < before && v < after) {
      if (pieces[j].start_closed || pieces[j].end_closed) {
        throw InvariantViolation("local minimum interval is not open");
      }
      out.lmin.push_back(pieces[j]);
    }
  }
  return out;
}

template <CircleScalar T>
int agreement_number(const Society<T>& society) {
  return counting_function(society).max_value();
}

template <CircleScalar T>
std::optional<Coord<T>> uncovered_point(const Society<T>& society) {
  const StepFunction<T> c = counting_function(society);
  const Piece<T>* widest = nullptr;
  T widest_len(0);
  for (const auto& p : c.pieces()) {
    if (p.value != 0) continue;
    const T len = p.length();
    if (widest == nullptr || widest_len < len) {
      widest = &p;
      widest_len = len;
    }
  }
  if (widest == nullptr) return std::nullopt;
  return ccw_midpoint(widest->start, widest->end);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

using Mask = std::vector<std::uint64_t>;

bool subset_of(const Mask& a, const Mask& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if ((a[w] & ~b[w]) != 0) return false;
  }
  return true;
}

}  // namespace

template <CircleScalar T>
bool is_km_agreeable(const Society<T>& society, int k, int m, AgreeabilityOptions opts) {
  const int n = static_cast<int>(society.size());
  if (n == 0) throw InputError("society has no arcs");
  if (k < 1 || k > m || m > n) {
    throw DomainError("(k,m)-agreeability needs 1 <= k <= m <= n; got k=" + std::to_string(k) +
                      ", m=" + std::to_string(m) + ", n=" + std::to_string(n));
  }
  if (k == 1) return true;
  const std::uint64_t subsets = binomial(n, m);
  if (n > 20 && subsets > opts.max_subsets && !opts.force) {
    throw TooLarge("refusing to enumerate C(" + std::to_string(n) + "," + std::to_string(m) +
                   ") subsets; pass force to override");
  }

  // Arc membership of every atom, keeping only inclusion-maximal masks.
  const Arrangement<T> arr = Arrangement<T>::build(society);
  const std::size_t bp = arr.breakpoints.size();
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<Mask> atoms(2 * bp, Mask(words, 0));
  for (std::size_t v = 0; v < society.size(); ++v) {
    const std::uint64_t bit = std::uint64_t{1} << (v % 64);
    const std::size_t li = arr.left_index[v];
    const std::size_t ri = arr.right_index[v];
    for (std::size_t i = li; i != ri; i = (i + 1) % bp) {
      atoms[2 * i][v / 64] |= bit;
      atoms[2 * i + 1][v / 64] |= bit;
    }
    if (society[v].closed()) atoms[2 * ri][v / 64] |= bit;
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::vector<Mask> maximal;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < atoms.size() && !dominated; ++j) {
      dominated = j != i && subset_of(atoms[i], atoms[j]);
    }
    if (!dominated) maximal.push_back(atoms[i]);
  }

  std::vector<int> pick(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i;
  Mask chosen(words);
  while (true) {
    std::fill(chosen.begin(), chosen.end(), 0);
    for (int v : pick) chosen[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    int best = 0;
    for (const Mask& atom : maximal) {
      int count = 0;
      for (std::size_t w = 0; w < words; ++w) count += std::popcount(atom[w] & chosen[w]);
      best = std::max(best, count);
      if (best >= k) break;
    }
    if (best < k) return false;

    // next combination in lexicographic order
    int i = m - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

#define CIRCPIERCE_INSTANTIATE(T)                                                        \
  template struct Arrangement<T>;                                                        \
  template struct Piece<T>;                                                              \
  template class StepFunction<T>;                                                        \
  template struct ExtremumIntervals<T>;                                                  \
  template StepFunction<T> counting_function(const Society<T>&);                         \
  template T riemann_integral(const StepFunction<T>&);                                   \
  template long long euler_integral(const StepFunction<T>&);                             \
  template ExtremumIntervals<T> extremum_intervals(const StepFunction<T>&);              \
  template int agreement_number(const Society<T>&);                                      \
  template std::optional<Coord<T>> uncovered_point(const Society<T>&);                   \
  template bool is_km_agreeable(const Society<T>&, int, int, AgreeabilityOptions);

CIRCPIERCE_INSTANTIATE(Rational)
CIRCPIERCE_INSTANTIATE(double)

#undef CIRCPIERCE_INSTANTIATE

}  // namespace circpierce
