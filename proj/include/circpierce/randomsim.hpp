#pragma once

// Random fixed-length societies, Monte Carlo piercing statistics and the
// closed-form probabilities they are compared against.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "circpierce/spectrum.hpp"

namespace circpierce {

struct RandomSocietyParams {
  int n = 1;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;

  /// Throws DomainError unless n >= 1, 0 < p < 1 and trials >= 1.
  void validate() const;
};

/// Seed of trial `trial` under `master`; depends on nothing else.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// n closed arcs of length p, left ends i.i.d. uniform on [0,1).
Society<double> random_society(int n, double p, std::uint64_t seed);

/// Exact-kind variant with left ends drawn uniformly from the grid j/denominator.
Society<Rational> random_rational_society(int n, const Rational& p, std::int64_t denominator, std::uint64_t seed,
                                          Closure closure = Closure::closed);

enum class Applicability { proven, conjectured, outside };
std::string_view to_string(Applicability a);

struct FormulaValue {
  double value = 0;
  Applicability applicability = Applicability::outside;
};

/// C(n,k) (1-kp)_+^(k-1) (kp)^(n-k). Proven for p < 1/(2k), conjectured for p < 1/k.
FormulaValue formula_tau_k(int n, double p, int k);

/// P(tau = 1) for three voters, all p in (0,1).
double formula_tau1_n3(double p);

/// Sum over k of k * formula_tau_k. Proven for p < 1/(2n).
FormulaValue expected_tau_formula(int n, double p);

struct Estimate {
  double value = 0;
  double se = 0;
};

struct SimulationReport {
  RandomSocietyParams params;
  std::map<int, std::uint64_t> histogram;
  std::map<int, Estimate> estimates;
  Estimate mean_tau;
  std::map<int, FormulaValue> formula_values;
  FormulaValue expected_formula;
};

/// Piercing number of `trials` random societies, computed on `jobs` threads
/// (0 picks the hardware count). The histogram does not depend on `jobs`.
SimulationReport simulate(const RandomSocietyParams& params, unsigned jobs = 1);

struct DisjointCheck {
  double closed_form = 0;
  Estimate estimate;
};

/// Chance that k random arcs of length p are pairwise disjoint. Needs kp < 1.
DisjointCheck disjoint_probability_check(int k, double p, std::uint64_t trials, std::uint64_t seed);

nlohmann::json to_json(const SimulationReport& report);

struct SweepRow {
  int n = 0;
  double p = 0;
  int k = 0;
  Estimate sim;
  FormulaValue formula;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// One simulation per grid value p_min, p_min + step, ... <= p_max, skipping
/// values outside (0,1). Each p gets its own seed derived from `seed`.
std::vector<SweepRow> sweep(int n, double p_min, double p_max, double p_step, std::uint64_t trials,
                            std::uint64_t seed, unsigned jobs = 1);

/// CSV with header n,p,k,prob_sim,se,prob_formula,formula_applicable,trials,seed.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace circpierce
