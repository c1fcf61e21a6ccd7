#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "circpierce/piercing.hpp"
#include "circpierce/randomsim.hpp"

using namespace circpierce;

TEST_CASE("random societies are deterministic") {
  CHECK(random_society(3, 0.2, 77) == random_society(3, 0.2, 77));
  CHECK_FALSE(random_society(3, 0.2, 77) == random_society(3, 0.2, 78));
  CHECK(trial_seed(1, 2) == trial_seed(1, 2));
  CHECK(trial_seed(1, 2) != trial_seed(2, 1));
  CHECK_THROWS_AS(random_society(3, 1.0, 1), DomainError);
  CHECK_THROWS_AS(random_society(0, 0.5, 1), DomainError);
  const auto s = random_society(4, 0.3, 5);
  CHECK(s.all_closed());
  CHECK(*s.common_length() == 0.3);
}

TEST_CASE("one voter always has tau 1") {
  for (std::uint64_t t = 0; t < 100; ++t) CHECK(piercing_number(random_society(1, 0.37, t)) == 1);
}

TEST_CASE("left endpoints are uniform (Kolmogorov-Smirnov)") {
  const std::size_t n = 100000;
  std::vector<double> xs;
  xs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) xs.push_back(random_society(1, 0.1, trial_seed(2024, t))[0].left().value());
  std::sort(xs.begin(), xs.end());
  double d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - xs[i]));
    d = std::max(d, std::abs(xs[i] - static_cast<double>(i) / n));
  }
  // 1% critical value 1.628 / sqrt(n)
  CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("tau-k formula values") {
  CHECK(formula_tau_k(5, 0.15, 4).value == doctest::Approx(0.1920).epsilon(1e-12));
  CHECK(formula_tau_k(10, 0.10, 7).value == doctest::Approx(120 * std::pow(0.3, 6) * std::pow(0.7, 3)).epsilon(1e-12));
  CHECK(std::round(formula_tau_k(10, 0.10, 7).value * 1e4) / 1e4 == doctest::Approx(0.0300));
  CHECK(formula_tau_k(3, 0.2, 1).value == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(formula_tau_k(3, 0.1, 1).applicability == Applicability::proven);
  CHECK(formula_tau_k(5, 0.15, 4).applicability == Applicability::conjectured);
  CHECK(formula_tau_k(5, 0.3, 4).applicability == Applicability::outside);
  CHECK(formula_tau_k(5, 0.3, 4).value == 0.0);
  CHECK_THROWS_AS(formula_tau_k(5, 0.1, 6), DomainError);
  CHECK_THROWS_AS(formula_tau_k(5, 0.1, 0), DomainError);
}

TEST_CASE("three-voter law") {
  CHECK(formula_tau1_n3(0.5) == doctest::Approx(0.75));
  CHECK(3 * 0.25 == doctest::Approx(-9 * 0.25 + 6 - 3));
  CHECK(formula_tau1_n3(2.0 / 3.0) == 1.0);
  CHECK(-9.0 * 4 / 9 + 8 - 3 == doctest::Approx(1.0));
  CHECK(formula_tau1_n3(0.6) == doctest::Approx(0.96));
  CHECK(formula_tau1_n3(0.2) == doctest::Approx(0.12));
  CHECK_THROWS_AS(formula_tau1_n3(1.0), DomainError);
}

TEST_CASE("expected tau formula") {
  CHECK(expected_tau_formula(5, 0.1).value == doctest::Approx(3.492).epsilon(5e-4 / 3.492));
  CHECK(expected_tau_formula(45, 0.02).value == doctest::Approx(23.816).epsilon(5e-4 / 23.816));
  CHECK(expected_tau_formula(5, 0.25).value == doctest::Approx(2.324).epsilon(5e-4 / 2.324));
  CHECK(expected_tau_formula(1, 0.4).value == doctest::Approx(1.0));
  CHECK(expected_tau_formula(5, 0.05).applicability == Applicability::proven);
  CHECK(expected_tau_formula(5, 0.1).applicability == Applicability::conjectured);
}

TEST_CASE("simulation report") {
  const auto r = simulate({5, 0.1, 42, 2000}, 1);
  std::uint64_t total = 0;
  double prob = 0;
  for (const auto& [k, c] : r.histogram) {
    total += c;
    CHECK(r.estimates.at(k).value == static_cast<double>(c) / 2000.0);
    CHECK(r.estimates.at(k).se ==
          doctest::Approx(std::sqrt(r.estimates.at(k).value * (1 - r.estimates.at(k).value) / 2000.0)));
    prob += r.estimates.at(k).value;
  }
  CHECK(total == 2000);
  CHECK(prob == doctest::Approx(1.0));
  CHECK(r.formula_values.size() == 5);
  const auto j = to_json(r);
  CHECK(j.contains("histogram"));
  CHECK(j["params"]["trials"] == 2000);
}

TEST_CASE("two long arcs always meet") {
  const auto r = simulate({2, 0.6, 9, 10000}, 1);
  CHECK(r.histogram.size() == 1);
  CHECK(r.histogram.at(1) == 10000);
}

TEST_CASE("histograms do not depend on the worker count") {
  const RandomSocietyParams params{6, 0.15, 1234, 3000};
  const auto a = simulate(params, 1);
  CHECK(a.histogram == simulate(params, 3).histogram);
  CHECK(a.histogram == simulate(params, 8).histogram);
}

TEST_CASE("disjoint arcs probability") {
  CHECK(disjoint_probability_check(2, 0.25, 10, 1).closed_form == doctest::Approx(0.5));
  const auto one = disjoint_probability_check(1, 0.7, 100, 1);
  CHECK(one.closed_form == 1.0);
  CHECK(one.estimate.value == 1.0);
  const auto three = disjoint_probability_check(3, 0.1, 100000, 5);
  CHECK(three.closed_form == doctest::Approx(0.49));
  CHECK(std::abs(three.estimate.value - 0.49) < 3 * three.estimate.se);
  CHECK_THROWS_AS(disjoint_probability_check(4, 0.25, 10, 1), DomainError);
}

TEST_CASE("sweep rows") {
  const auto rows = sweep(3, 0.0, 0.2, 0.1, 200, 7, 1);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].p == 0.1);
  CHECK(rows[3].p == 0.2);
  const auto csv = sweep_csv(rows);
  CHECK(csv.rfind("n,p,k,prob_sim,se,prob_formula,formula_applicable,trials,seed\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
