// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circpierce/constructions.hpp"
#include "circpierce/counting.hpp"
#include "circpierce/piercing.hpp"
#include "circpierce/randomsim.hpp"
#include "oracle.hpp"

using namespace circpierce;

namespace {

// Pinned tolerances.
constexpr double kRiemannFloatTol = 1e-12;
constexpr double kSeBand = 4.0;
constexpr std::uint64_t kFormulaTrials = 100000;
constexpr std::uint64_t kLawTrials = 50000;
constexpr std::uint64_t kMeanTrials = 10000;
constexpr double kUniformSeconds = 10.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

Coord<Rational> q(std::int64_t a, std::int64_t b) { return Coord<Rational>::normalize(make_rational(a, b)); }

Society<double> to_float(const Society<Rational>& s) {
  std::vector<Arc<double>> arcs;
  for (const auto& a : s.arcs()) {
    arcs.emplace_back(Coord<double>::normalize(to_double(a.left().value())), to_double(a.length()), a.closure());
  }
  return Society<double>(std::move(arcs));
}

// Closed fixed-length corpus shared by the integral and agreement criteria.
struct CorpusEntry {
  Society<Rational> society;
  Rational p;
};

std::vector<CorpusEntry> closed_corpus() {
  std::vector<CorpusEntry> out;
  std::mt19937_64 gen(20240501);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(gen() % 12);
    const Rational p = make_rational(1 + static_cast<std::int64_t>(gen() % 19), 20);
    out.push_back({random_rational_society(n, p, 240, gen()), p});
  }
  return out;
}

Outcome uniform_criterion() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int cases = 0;
  for (int n = 2; n <= 12; ++n) {
    for (int h = 1; h < n; ++h) {
      const auto s = uniform_society(n, h);
      const int tau = piercing_number(s);
      const int a = agreement_number(s);
      ++cases;
      if (tau != (n + h - 1) / h || a != h) {
        o.fail("U(" + std::to_string(n) + "," + std::to_string(h) + ") tau=" + std::to_string(tau) +
               " a=" + std::to_string(a));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kUniformSeconds) o.fail("took " + std::to_string(secs) + " s");
  o.detail << cases << " societies, " << secs << " s";
  return o;
}

Outcome sharp_criterion() {
  Outcome o;
  for (int qq = 2; qq <= 6; ++qq) {
    const auto s = sharp_society(qq);
    std::vector<Coord<Rational>> lefts;
    for (int i = 0; i < qq; ++i) lefts.push_back(s[static_cast<std::size_t>(i)].left());
    const int tau = piercing_number(s);
    const int a = agreement_number(s);
    const bool pierced = pierces_all(s, std::span<const Coord<Rational>>(lefts));
    if (tau != qq || a != 2 || !pierced) {
      o.fail("q=" + std::to_string(qq) + " tau=" + std::to_string(tau) + " a=" + std::to_string(a));
    }
  }
  o.detail << "q = 2..6";
  return o;
}

Society<Rational> random_varied(std::mt19937_64& gen, int n, int den, int max_len) {
  std::uniform_int_distribution<int> pick(0, den - 1);
  std::uniform_int_distribution<int> len(1, max_len);
  std::vector<Arc<Rational>> arcs;
  for (int i = 0; i < n; ++i) {
    const Closure c = gen() % 3 == 0 ? Closure::half_open : Closure::closed;
    arcs.emplace_back(q(pick(gen), den), make_rational(len(gen), den), c);
  }
  return Society<Rational>(std::move(arcs));
}

Outcome greedy_criterion() {
  Outcome o;
  std::mt19937_64 gen(7);
  int tested = 0;
  int max_tau = 0;
  while (tested < 500) {
    const int n = 1 + static_cast<int>(gen() % 10);
    const auto s = random_varied(gen, n, 60, 20);
    if (!uncovered_point(s)) continue;
    ++tested;
    const int greedy = static_cast<int>(greedy_linear_pierce(s).size());
    const int brute = oracle::min_piercing(s);
    max_tau = std::max(max_tau, brute);
    if (greedy != brute) o.fail("greedy " + std::to_string(greedy) + " vs brute force " + std::to_string(brute));
  }
  o.detail << tested << " societies, largest tau " << max_tau;
  return o;
}

Outcome alg2_criterion() {
  Outcome o;
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> cut(0, 2399);
  int extra = 0;
  int runs = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(gen() % 8);
    const Rational p = make_rational(1 + t % 8, 20);  // 0.05 .. 0.40
    const auto s = random_rational_society(n, p, 240, gen());
    const int tau = piercing_number(s);
    if (tau != oracle::min_piercing(s)) o.fail("exact solver disagrees with brute force");
    for (int j = 0; j < 20; ++j) {
      const auto r = circular_pierce_alg2(s, q(cut(gen), 2400));
      const int size = static_cast<int>(r.size());
      ++runs;
      if (size == tau + 1) ++extra;
      if (size != tau && size != tau + 1) o.fail("alg2 " + std::to_string(size) + " vs tau " + std::to_string(tau));
    }
  }
  o.detail << runs << " runs, " << extra << " used one extra point";
  return o;
}

Outcome integral_criterion(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  double worst = 0;
  for (const auto& [s, p] : corpus) {
    const int n = static_cast<int>(s.size());
    const auto c = counting_function(s);
    if (riemann_integral(c) != p * n) o.fail("rational Riemann integral differs from n*p");
    const auto cf = counting_function(to_float(s));
    const double err = std::abs(riemann_integral(cf) - n * to_double(p));
    worst = std::max(worst, err);
    if (!(err <= kRiemannFloatTol)) o.fail("float Riemann integral off by " + std::to_string(err));
    if (euler_integral(c) != n) o.fail("Euler integral " + std::to_string(euler_integral(c)) + " != n");
    if (euler_integral(cf) != n) o.fail("float Euler integral != n");
    const auto ext = extremum_intervals(c);
    if (ext.lmax_sum() - ext.lmin_sum() != n) o.fail("sum lmax - sum lmin != n");
  }
  o.detail << corpus.size() << " societies, worst float Riemann error " << worst;
  return o;
}

Outcome agreement_criterion(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  long long checks = 0;
  for (const auto& [s, p] : corpus) {
    const int n = static_cast<int>(s.size());
    const int a = agreement_number(s);
    const int tau = piercing_number(s);
    const auto floor_np = static_cast<int>(floor_of(p * n));
    ++checks;
    if (a < floor_np + 1) o.fail("a(S) < floor(np)+1");
    for (int k = 2; k <= 3; ++k) {
      const auto m = static_cast<int>(ceil_of(Rational(k - 1) / p));
      if (m > n || k > n) continue;  // vacuous: fewer than m voters
      ++checks;
      if (!is_km_agreeable(s, k, m)) o.fail("not (" + std::to_string(k) + "," + std::to_string(m) + ")-agreeable");
    }
    // table[k][m] for 1 <= k <= m <= n
    std::vector<std::vector<char>> table(static_cast<std::size_t>(n) + 1, std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
    for (int k = 1; k <= n; ++k) {
      for (int m = k; m <= n; ++m) table[k][m] = is_km_agreeable(s, k, m) ? 1 : 0;
    }
    for (int k = 1; k <= n; ++k) {
      for (int m = k; m <= n; ++m) {
        if (!table[k][m]) continue;
        for (int i = 1; i < k; ++i) {
          ++checks;
          if (!table[k - i][m - i]) o.fail("monotonicity fails");
        }
        if (k >= 2) {
          checks += 2;
          if (tau > m - k + 2) o.fail("tau > m-k+2");
          if (static_cast<long long>(a) * m <= static_cast<long long>(n) * (k - 1)) o.fail("a(S) <= n(k-1)/m");
        }
      }
    }
  }
  o.detail << corpus.size() << " societies, " << checks << " checks";
  return o;
}

Outcome formula_criterion() {
  Outcome o;
  struct Row {
    int n;
    int k;
    double p;
    double table;
  };
  const std::vector<Row> rows{{5, 4, 0.15, 0.1920},  {5, 5, 0.15, 0.0039},  {8, 5, 0.12, 0.3040},
                              {8, 6, 0.12, 0.0250},  {10, 5, 0.10, 0.4922}, {10, 6, 0.10, 0.2787},
                              {10, 7, 0.10, 0.0300}, {10, 8, 0.10, 0.0004}};
  const auto start = std::chrono::steady_clock::now();
  std::map<std::pair<int, double>, SimulationReport> sims;
  std::uint64_t seed = 1000;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.n, r.p);
    if (!sims.contains(key)) sims.emplace(key, simulate({r.n, r.p, ++seed, kFormulaTrials}, 0));
    const auto& rep = sims.at(key);
    const auto it = rep.estimates.find(r.k);
    const Estimate est = it == rep.estimates.end() ? Estimate{} : it->second;
    const double formula = formula_tau_k(r.n, r.p, r.k).value;
    const double z = est.se > 0 ? (est.value - formula) / est.se : (est.value == formula ? 0.0 : INFINITY);
    char line[200];
    std::snprintf(line, sizeof line, "    (n=%d,k=%d,p=%.2f) sim %.4f se %.4f formula %.5f table %.4f z %+.2f\n", r.n,
                  r.k, r.p, est.value, est.se, formula, r.table, z);
    std::cout << line;
    if (!(std::abs(est.value - formula) <= kSeBand * est.se)) {
      o.fail("(n=" + std::to_string(r.n) + ",k=" + std::to_string(r.k) + ") outside 4 SE");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.detail << rows.size() << " cells at N=" << kFormulaTrials << ", " << secs << " s";
  return o;
}

Outcome law_criterion() {
  Outcome o;
  // Continuity, exactly.
  const Rational half = make_rational(1, 2);
  const Rational two_thirds = make_rational(2, 3);
  auto quad = [](const Rational& p) { return -9 * p * p + 12 * p - 3; };
  if (3 * half * half != quad(half)) o.fail("branches disagree at 1/2");
  if (quad(two_thirds) != 1) o.fail("branches disagree at 2/3");
  double worst = 0;
  for (int i = 1; i <= 19; ++i) {
    const double p = i * 0.05;
    const auto rep = simulate({3, p, trial_seed(333, static_cast<std::uint64_t>(i)), kLawTrials}, 0);
    const auto it = rep.estimates.find(1);
    const Estimate est = it == rep.estimates.end() ? Estimate{} : it->second;
    const double expect = formula_tau1_n3(p);
    const double diff = std::abs(est.value - expect);
    if (est.se > 0) worst = std::max(worst, diff / est.se);
    if (!(diff <= kSeBand * est.se)) o.fail("p=" + std::to_string(p) + " outside 4 SE");
  }
  o.detail << "19 grid values at N=" << kLawTrials << ", worst |z| " << worst;
  return o;
}

Outcome mean_criterion() {
  Outcome o;
  struct Row {
    int n;
    double p;
    double table;
  };
  const std::vector<Row> rows{{5, 0.1, 3.492}, {5, 0.2, 2.632}, {5, 0.25, 2.324}, {25, 0.05, 11.222}, {25, 0.1, 7.201}};
  std::uint64_t seed = 900;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& r : rows) {
    const auto rep = simulate({r.n, r.p, ++seed, kMeanTrials}, 0);
    const double formula = expected_tau_formula(r.n, r.p).value;
    char line[200];
    std::snprintf(line, sizeof line, "    (n=%d,p=%.2f) mean %.4f se %.4f formula %.4f table %.3f z %+.2f\n", r.n, r.p,
                  rep.mean_tau.value, rep.mean_tau.se, formula, r.table,
                  (rep.mean_tau.value - formula) / rep.mean_tau.se);
    std::cout << line;
    if (!(std::abs(rep.mean_tau.value - formula) <= kSeBand * rep.mean_tau.se)) {
      o.fail("(n=" + std::to_string(r.n) + ",p=" + std::to_string(r.p) + ") outside 4 SE");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.detail << rows.size() << " cells at N=" << kMeanTrials << ", " << secs << " s";
  return o;
}

Outcome tau_one_criterion() {
  Outcome o;
  std::mt19937_64 gen(101);
  int at_boundary = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + t % 3;
    // p = (n-1)/n + r/(10n), r = 0..9; r = 0 sits exactly on the threshold
    const int r = static_cast<int>(gen() % 10);
    if (r == 0) ++at_boundary;
    const Rational p = make_rational(n - 1, n) + make_rational(r, 10LL * n);
    const auto s = random_rational_society(n, p, 60LL * n, gen());
    if (piercing_number(s) != 1) o.fail("tau != 1 for n=" + std::to_string(n));
  }
  o.detail << "200 societies, " << at_boundary << " at p = (n-1)/n";
  return o;
}

Outcome sub_sharp_criterion() {
  Outcome o;
  std::mt19937_64 gen(202);
  for (int t = 0; t < 200; ++t) {
    const int qq = 3 + t % 3;
    const int n = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(2 * qq - 2));
    const auto s = random_rational_society(n, make_rational(1, qq), 6LL * qq * qq, gen());
    if (piercing_number(s) > qq - 1) o.fail("tau > q-1 for q=" + std::to_string(qq) + " n=" + std::to_string(n));
  }
  o.detail << "200 societies, q in {3,4,5}";
  return o;
}

std::string capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

Outcome determinism_criterion() {
  Outcome o;
  const std::string base = std::string(CIRCPIERCE_CLI) + " simulate --n 8 --p 0.12 --trials 20000 --seed 42";
  try {
    const auto one = nlohmann::json::parse(capture(base + " --jobs 1"));
    const auto eight = nlohmann::json::parse(capture(base + " --jobs 8"));
    if (one["histogram"] != eight["histogram"]) o.fail("CLI histograms differ");
  } catch (const std::exception& e) {
    o.fail(std::string("CLI run failed: ") + e.what());
  }
  const RandomSocietyParams params{10, 0.1, 77, 20000};
  if (simulate(params, 1).histogram != simulate(params, 8).histogram) o.fail("library histograms differ");
  o.detail << "--jobs 1 vs --jobs 8, CLI and library";
  return o;
}

}  // namespace

int main() {
  const auto corpus = closed_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC-01 uniform societies: tau = ceil(n/h), a = h", uniform_criterion},
      {"AC-02 sharp constructions: tau = q, a = 2, left ends pierce", sharp_criterion},
      {"AC-03 greedy equals brute-force minimum", greedy_criterion},
      {"AC-04 circular alg2 within one of tau", alg2_criterion},
      {"AC-05 integral identities", [&] { return integral_criterion(corpus); }},
      {"AC-06 agreement bounds", [&] { return agreement_criterion(corpus); }},
      {"AC-07 P(tau=k) formula, proven range", formula_criterion},
      {"AC-08 n=3 piecewise law", law_criterion},
      {"AC-09 expected piercing number", mean_criterion},
      {"AC-10 tau = 1 when p >= (n-1)/n", tau_one_criterion},
      {"AC-11 tau <= q-1 below 2q-1 voters", sub_sharp_criterion},
      {"AC-12 simulation determinism across job counts", determinism_criterion},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " [" << o.detail.str() << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
