#include "circpierce/randomsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "circpierce/counting.hpp"
#include "circpierce/piercing.hpp"

namespace circpierce {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

Estimate proportion(std::uint64_t count, std::uint64_t trials) {
  const double phat = static_cast<double>(count) / static_cast<double>(trials);
  return {phat, std::sqrt(phat * (1.0 - phat) / static_cast<double>(trials))};
}

Applicability classify(double p, int k) {
  if (p < 1.0 / (2.0 * k)) return Applicability::proven;
  if (p < 1.0 / k) return Applicability::conjectured;
  return Applicability::outside;
}

unsigned worker_count(unsigned jobs, std::uint64_t trials) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(jobs, trials));
}

// Runs body(first, last, slot) on contiguous slices of [0, trials).
template <class Body>
void split_trials(std::uint64_t trials, unsigned workers, Body body) {
  if (workers <= 1) {
    body(0, trials, 0u);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t first = trials * w / workers;
    const std::uint64_t last = trials * (w + 1) / workers;
    threads.emplace_back([&, first, last, w] {
      try {
        body(first, last, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void RandomSocietyParams::validate() const {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  if (trials < 1) throw DomainError("trials must be >= 1");
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(splitmix64(master) ^ trial);
}

Society<double> random_society(int n, double p, std::uint64_t seed) {
  RandomSocietyParams{n, p, seed, 1}.validate();
  std::mt19937_64 gen(seed);
  std::vector<Arc<double>> arcs;
  arcs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    arcs.emplace_back(Coord<double>::normalize(unit_uniform(gen)), p, Closure::closed);
  }
  return Society<double>(std::move(arcs));
}

Society<Rational> random_rational_society(int n, const Rational& p, std::int64_t denominator, std::uint64_t seed,
                                          Closure closure) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (denominator < 1) throw DomainError("denominator must be >= 1");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, denominator - 1);
  std::vector<Arc<Rational>> arcs;
  arcs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    arcs.emplace_back(Coord<Rational>::normalize(make_rational(pick(gen), denominator)), p, closure);
  }
  return Society<Rational>(std::move(arcs));
}

std::string_view to_string(Applicability a) {
  switch (a) {
    case Applicability::proven:
      return "proven";
    case Applicability::conjectured:
      return "conjectured";
    case Applicability::outside:
      break;
  }
  return "outside";
}

FormulaValue formula_tau_k(int n, double p, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("formula needs 1 <= k <= n");
  if (!(p > 0.0)) throw DomainError("p must be positive");
  const double kp = k * p;
  const double room = std::max(0.0, 1.0 - kp);
  const double value = static_cast<double>(binomial(n, k)) * std::pow(room, k - 1) * std::pow(kp, n - k);
  return {value, classify(p, k)};
}

double formula_tau1_n3(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  if (p < 0.5) return 3.0 * p * p;
  if (p < 2.0 / 3.0) return -9.0 * p * p + 12.0 * p - 3.0;
  return 1.0;
}

FormulaValue expected_tau_formula(int n, double p) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  double sum = 0;
  for (int k = 1; k <= n; ++k) sum += k * formula_tau_k(n, p, k).value;
  return {sum, p < 1.0 / (2.0 * n) ? Applicability::proven : Applicability::conjectured};
}

SimulationReport simulate(const RandomSocietyParams& params, unsigned jobs) {
  params.validate();
  const unsigned workers = worker_count(jobs, params.trials);
  const auto width = static_cast<std::size_t>(params.n) + 1;
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(width, 0));
  split_trials(params.trials, workers, [&](std::uint64_t first, std::uint64_t last, unsigned slot) {
    auto& counts = partial[slot];
    for (std::uint64_t t = first; t < last; ++t) {
      const auto society = random_society(params.n, params.p, trial_seed(params.seed, t));
      ++counts[static_cast<std::size_t>(piercing_number(society))];
    }
  });

  std::vector<std::uint64_t> counts(width, 0);
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < width; ++k) counts[k] += part[k];
  }

  SimulationReport report;
  report.params = params;
  const double trials = static_cast<double>(params.trials);
  double sum = 0;
  for (std::size_t k = 1; k < width; ++k) {
    if (counts[k] == 0) continue;
    report.histogram[static_cast<int>(k)] = counts[k];
    report.estimates[static_cast<int>(k)] = proportion(counts[k], params.trials);
    sum += static_cast<double>(k) * static_cast<double>(counts[k]);
  }
  const double mean = sum / trials;
  double squares = 0;
  for (const auto& [k, c] : report.histogram) squares += static_cast<double>(c) * (k - mean) * (k - mean);
  const double sd = params.trials > 1 ? std::sqrt(squares / (trials - 1)) : 0.0;
  report.mean_tau = {mean, sd / std::sqrt(trials)};
  for (int k = 1; k <= params.n; ++k) report.formula_values[k] = formula_tau_k(params.n, params.p, k);
  report.expected_formula = expected_tau_formula(params.n, params.p);
  return report;
}

DisjointCheck disjoint_probability_check(int k, double p, std::uint64_t trials, std::uint64_t seed) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  if (!(k * p < 1.0)) throw DomainError("k arcs of length p cannot be disjoint when kp >= 1");
  if (trials < 1) throw DomainError("trials must be >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto society = random_society(k, p, trial_seed(seed, t));
    bool disjoint = true;
    for (int a = 0; a < k && disjoint; ++a) {
      for (int b = a + 1; b < k && disjoint; ++b) {
        disjoint = !society.intersect(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      }
    }
    if (disjoint) ++hits;
  }
  return {std::pow(1.0 - k * p, k - 1), proportion(hits, trials)};
}

nlohmann::json to_json(const SimulationReport& report) {
  nlohmann::json j;
  j["params"] = {{"n", report.params.n},
                 {"p", report.params.p},
                 {"seed", report.params.seed},
                 {"trials", report.params.trials}};
  auto histogram = nlohmann::json::object();
  auto estimates = nlohmann::json::object();
  for (const auto& [k, c] : report.histogram) histogram[std::to_string(k)] = c;
  for (const auto& [k, e] : report.estimates) {
    estimates[std::to_string(k)] = {{"probability", e.value}, {"se", e.se}};
  }
  auto formulas = nlohmann::json::object();
  for (const auto& [k, f] : report.formula_values) {
    formulas[std::to_string(k)] = {{"value", f.value}, {"applicability", to_string(f.applicability)}};
  }
  j["histogram"] = std::move(histogram);
  j["estimates"] = std::move(estimates);
  j["mean_tau"] = {{"estimate", report.mean_tau.value}, {"se", report.mean_tau.se}};
  j["formula_values"] = std::move(formulas);
  j["expected_tau_formula"] = {{"value", report.expected_formula.value},
                               {"applicability", to_string(report.expected_formula.applicability)}};
  return j;
}

std::vector<SweepRow> sweep(int n, double p_min, double p_max, double p_step, std::uint64_t trials,
                            std::uint64_t seed, unsigned jobs) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(p_step > 0.0) || !std::isfinite(p_step)) throw DomainError("p-step must be positive");
  if (!std::isfinite(p_min) || !std::isfinite(p_max) || p_max < p_min) throw DomainError("need p-min <= p-max");
  if (trials < 1) throw DomainError("trials must be >= 1");
  std::vector<SweepRow> rows;
  const auto steps = static_cast<std::uint64_t>(std::floor((p_max - p_min) / p_step + 1e-9));
  for (std::uint64_t i = 0; i <= steps; ++i) {
    // Snap to the decimal grid so 0.1 + 2 * 0.1 prints as 0.3.
    const double p = std::round((p_min + static_cast<double>(i) * p_step) * 1e12) / 1e12;
    if (!(p > 0.0 && p < 1.0)) continue;
    const std::uint64_t p_seed = trial_seed(seed ^ 0x5eedULL, i);
    const SimulationReport report = simulate({n, p, p_seed, trials}, jobs);
    for (int k = 1; k <= n; ++k) {
      SweepRow row{n, p, k, {}, formula_tau_k(n, p, k), trials, p_seed};
      const auto it = report.histogram.find(k);
      row.sim = proportion(it == report.histogram.end() ? 0 : it->second, trials);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "n,p,k,prob_sim,se,prob_formula,formula_applicable,trials,seed\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_decimal(r.p) << ',' << r.k << ',' << format_decimal(r.sim.value) << ','
        << format_decimal(r.sim.se) << ',' << format_decimal(r.formula.value) << ','
        << to_string(r.formula.applicability) << ',' << r.trials << ',' << r.seed << '\n';
  }
  return out.str();
}

}  // namespace circpierce
