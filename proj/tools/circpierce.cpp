// circpierce: command-line front end for circular society computations.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "circpierce/constructions.hpp"
#include "circpierce/counting.hpp"
#include "circpierce/piercing.hpp"
#include "circpierce/randomsim.hpp"
#include "circpierce/society_io.hpp"

namespace cp = circpierce;
using nlohmann::json;

namespace {

struct Io {
  std::string input;
  std::string out;
};

cp::AnySociety read_society(const Io& io, double tolerance) {
  cp::AnySociety society = [&] {
    if (!io.input.empty()) return cp::load_society(io.input);
    std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return cp::parse_society(text);
  }();
  if (tolerance != 0.0) std::visit([&](auto& s) { s.set_tolerance(tolerance); }, society);
  return society;
}

void emit(const Io& io, const std::string& text) {
  if (io.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(io.out);
  if (!f) throw cp::InputError("cannot write " + io.out);
  f << text;
}

void emit_json(const Io& io, const json& j) { emit(io, j.dump(2) + "\n"); }

template <cp::CircleScalar T>
json points_json(const std::vector<cp::Coord<T>>& points) {
  json arr = json::array();
  for (const auto& p : points) arr.push_back(cp::format_scalar(p.value()));
  return arr;
}

template <cp::CircleScalar T>
json piece_json(const cp::Piece<T>& p) {
  return {{"start", cp::format_scalar(p.start.value())},
          {"end", cp::format_scalar(p.end.value())},
          {"start_closed", p.start_closed},
          {"end_closed", p.end_closed},
          {"value", p.value},
          {"full_circle", p.full_circle}};
}

std::uint64_t seed_or_env(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CIRC_PIERCE_SEED")) {
    std::uint64_t v = 0;
    std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw cp::InputError("CIRC_PIERCE_SEED is not an unsigned integer: " + std::string(text));
    }
    return v;
  }
  return 0;
}

struct PierceFlags {
  std::string method = "exact";
  std::string cut;
  std::string start;
};

json run_pierce(const cp::AnySociety& any, const PierceFlags& flags) {
  const cp::PiercingMethod method = cp::parse_method(flags.method);
  return std::visit(
      [&](const auto& s) -> json {
        using T = std::decay_t<decltype(s.arcs().front().length())>;
        auto coord = [&](const std::string& raw) {
          return cp::coord_as<T>(cp::parse_coord(raw, cp::kind_of<T>));
        };
        cp::PiercingResult<T> r;
        switch (method) {
          case cp::PiercingMethod::greedy_linear:
            r = flags.cut.empty() ? cp::greedy_linear_pierce(s) : cp::greedy_linear_pierce(s, coord(flags.cut));
            break;
          case cp::PiercingMethod::circular_alg2:
            if (flags.start.empty()) throw cp::InputError("--method alg2 needs --start");
            r = cp::circular_pierce_alg2(s, coord(flags.start));
            break;
          case cp::PiercingMethod::exact:
            r = cp::exact_pierce(s);
            break;
        }
        json witness = json::object();
        for (std::size_t v = 0; v < r.witness.size(); ++v) witness[std::to_string(v)] = r.witness[v];
        json out;
        out["tau"] = r.optimal ? json(r.size()) : json(nullptr);
        out["points"] = points_json(r.points);
        out["witness"] = std::move(witness);
        out["optimal"] = r.optimal;
        out["method"] = std::string(cp::to_string(r.method));
        out["disjoint_family"] = r.disjoint_family;
        return out;
      },
      any);
}

json run_agreement(const cp::AnySociety& any) {
  return std::visit(
      [](const auto& s) -> json {
        const auto c = cp::counting_function(s);
        const int a = c.max_value();
        json out{{"agreement", a}, {"n", s.size()}};
        for (const auto& p : c.pieces()) {
          if (p.value != a) continue;
          const auto at = (p.is_point() || p.full_circle) ? p.start : cp::ccw_midpoint(p.start, p.end);
          out["point"] = cp::format_scalar(at.value());
          break;
        }
        return out;
      },
      any);
}

std::string run_counting(const cp::AnySociety& any) {
  return std::visit(
      [](const auto& s) {
        std::ostringstream csv;
        csv << "piece_start,piece_end,start_closed,end_closed,value\n";
        const auto c = cp::counting_function(s);
        for (const auto& p : c.pieces()) {
          csv << cp::format_scalar(p.start.value()) << ',' << cp::format_scalar(p.end.value()) << ','
              << (p.start_closed ? "true" : "false") << ',' << (p.end_closed ? "true" : "false") << ',' << p.value
              << '\n';
        }
        return csv.str();
      },
      any);
}

json run_integrals(const cp::AnySociety& any) {
  return std::visit(
      [](const auto& s) -> json {
        const auto c = cp::counting_function(s);
        json out{{"n", s.size()}, {"riemann", cp::format_scalar(cp::riemann_integral(c))}};
        out["euler"] = nullptr;
        if (s.all_closed()) {
          out["euler"] = cp::euler_integral(c);
          if (!c.constant()) {
            const auto ext = cp::extremum_intervals(c);
            json lmax = json::array();
            json lmin = json::array();
            for (const auto& p : ext.lmax) lmax.push_back(piece_json(p));
            for (const auto& p : ext.lmin) lmin.push_back(piece_json(p));
            out["lmax"] = std::move(lmax);
            out["lmin"] = std::move(lmin);
            out["lmax_sum"] = ext.lmax_sum();
            out["lmin_sum"] = ext.lmin_sum();
          }
        }
        return out;
      },
      any);
}

json run_verify(const cp::AnySociety& any, int max_n) {
  return std::visit(
      [&](const auto& s) -> json {
        const cp::BoundReport r = cp::verify_bounds(s, {max_n});
        json checks = json::array();
        for (const auto& c : r.checks) {
          checks.push_back(
              {{"name", c.name}, {"statement", c.statement}, {"limit", c.limit}, {"actual", c.actual}, {"holds", c.holds}});
        }
        return {{"tau", r.tau},
                {"agreement", r.agreement},
                {"linear_equivalent", r.linear_equivalent},
                {"checks", std::move(checks)},
                {"all_hold", r.all_hold()}};
      },
      any);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piercing numbers and agreement of circular societies"};
  app.require_subcommand(1);
  Io io;
  double tolerance = 0.0;

  auto add_io = [&](CLI::App* cmd, bool reads) {
    if (reads) {
      cmd->add_option("--input,-i", io.input, "society JSON (default: stdin)")->check(CLI::ExistingFile);
      cmd->add_option("--tolerance", tolerance, "containment slack for decimal societies")->check(CLI::NonNegativeNumber);
    }
    cmd->add_option("--out,-o", io.out, "output file (default: stdout)");
  };

  PierceFlags pierce;
  auto* pierce_cmd = app.add_subcommand("pierce", "minimum or heuristic piercing set");
  add_io(pierce_cmd, true);
  pierce_cmd->add_option("--method", pierce.method, "exact | greedy | alg2")
      ->check(CLI::IsMember({"exact", "greedy", "greedy_linear", "alg2", "circular_alg2"}));
  pierce_cmd->add_option("--cut,--cut-point", pierce.cut, "uncovered cut point for greedy");
  pierce_cmd->add_option("--start", pierce.start, "first point for alg2");

  auto* agreement_cmd = app.add_subcommand("agreement", "agreement number");
  add_io(agreement_cmd, true);

  int k = 0;
  int m = 0;
  bool force = false;
  auto* agreeable_cmd = app.add_subcommand("agreeable", "(k,m)-agreeability");
  add_io(agreeable_cmd, true);
  agreeable_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  agreeable_cmd->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  agreeable_cmd->add_flag("--force", force, "enumerate even very large families");

  auto* counting_cmd = app.add_subcommand("counting", "counting function pieces as CSV");
  add_io(counting_cmd, true);

  auto* integrals_cmd = app.add_subcommand("integrals", "Riemann and Euler integrals, extremum intervals");
  add_io(integrals_cmd, true);

  int cn = 0;
  int ch = 0;
  int cq = 0;
  std::string cid;
  std::string closed_eps;
  auto* construct_cmd = app.add_subcommand("construct", "build a named society");
  construct_cmd->require_subcommand(1);
  auto* uniform_cmd = construct_cmd->add_subcommand("uniform", "U(n,h)");
  uniform_cmd->set_help_flag("--help", "Print this help message and exit");
  add_io(uniform_cmd, false);
  uniform_cmd->add_option("--n", cn)->required();
  uniform_cmd->add_option("--h", ch)->required();
  uniform_cmd->add_option("--closed-epsilon", closed_eps, "closed variant shrunk by this rational");
  auto* sharp_cmd = construct_cmd->add_subcommand("sharp", "2q-1 arcs with tau = q");
  add_io(sharp_cmd, false);
  sharp_cmd->add_option("--q", cq)->required();
  auto* figure_cmd = construct_cmd->add_subcommand("figure", "worked example society");
  add_io(figure_cmd, false);
  figure_cmd->add_option("--id", cid)->required();

  int sn = 0;
  double sp = 0;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo piercing-number distribution");
  add_io(simulate_cmd, false);
  simulate_cmd->add_option("--n", sn)->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--p", sp)->required();
  simulate_cmd->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", seed);
  simulate_cmd->add_option("--jobs", jobs)->check(CLI::NonNegativeNumber);

  double p_min = 0;
  double p_max = 0;
  double p_step = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "simulated and formula P(tau=k) over a grid of p, as CSV");
  add_io(sweep_cmd, false);
  sweep_cmd->add_option("--n", sn)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--p-min", p_min)->required();
  sweep_cmd->add_option("--p-max", p_max)->required();
  sweep_cmd->add_option("--p-step", p_step)->required();
  sweep_cmd->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", seed);
  sweep_cmd->add_option("--jobs", jobs)->check(CLI::NonNegativeNumber);

  int max_n = 14;
  auto* verify_cmd = app.add_subcommand("verify-bounds", "check every applicable bound; exit 1 if one fails");
  add_io(verify_cmd, true);
  verify_cmd->add_option("--max-agreeability-n", max_n, "largest n for (k,m) enumeration");

  int pk = 0;
  std::string what = "tau";
  std::uint64_t disjoint_trials = 100000;
  auto* probability_cmd = app.add_subcommand("probability", "closed-form probabilities for random societies");
  add_io(probability_cmd, false);
  probability_cmd->add_option("--n", sn);
  probability_cmd->add_option("--p", sp)->required();
  probability_cmd->add_option("--k", pk);
  probability_cmd->add_option("--what", what, "tau | expected | tau1-n3 | disjoint")
      ->check(CLI::IsMember({"tau", "expected", "tau1-n3", "disjoint"}));
  probability_cmd->add_option("--trials", disjoint_trials, "Monte Carlo trials for --what disjoint");
  probability_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pierce_cmd) {
      emit_json(io, run_pierce(read_society(io, tolerance), pierce));
    } else if (*agreement_cmd) {
      emit_json(io, run_agreement(read_society(io, tolerance)));
    } else if (*agreeable_cmd) {
      const auto any = read_society(io, tolerance);
      const bool ok = std::visit(
          [&](const auto& s) { return cp::is_km_agreeable(s, k, m, {force, 1'000'000}); }, any);
      emit_json(io, {{"k", k}, {"m", m}, {"agreeable", ok}});
    } else if (*counting_cmd) {
      emit(io, run_counting(read_society(io, tolerance)));
    } else if (*integrals_cmd) {
      emit_json(io, run_integrals(read_society(io, tolerance)));
    } else if (*construct_cmd) {
      cp::ConstructionSpec spec;
      if (*uniform_cmd) {
        spec.kind = cp::ConstructionKind::uniform;
        spec.n = cn;
        spec.h = ch;
        if (!closed_eps.empty()) spec.closed_epsilon = cp::parse_rational(closed_eps);
      } else if (*sharp_cmd) {
        spec.kind = cp::ConstructionKind::sharp;
        spec.q = cq;
      } else {
        spec.kind = cp::ConstructionKind::figure_example;
        spec.id = cid;
      }
      emit(io, cp::dump_society(cp::build(spec)) + "\n");
    } else if (*simulate_cmd) {
      const cp::RandomSocietyParams params{sn, sp, seed_or_env(seed), trials};
      params.validate();
      emit_json(io, cp::to_json(cp::simulate(params, jobs)));
    } else if (*sweep_cmd) {
      emit(io, cp::sweep_csv(cp::sweep(sn, p_min, p_max, p_step, trials, seed_or_env(seed), jobs)));
    } else if (*verify_cmd) {
      const json report = run_verify(read_society(io, tolerance), max_n);
      emit_json(io, report);
      return report["all_hold"].get<bool>() ? 0 : 1;
    } else if (*probability_cmd) {
      json out{{"what", what}, {"p", sp}};
      if (what == "tau1-n3") {
        out["value"] = cp::formula_tau1_n3(sp);
        out["applicable"] = true;
        out["applicability"] = "proven";
      } else if (what == "disjoint") {
        if (pk < 1) throw cp::InputError("--what disjoint needs --k");
        const auto check = cp::disjoint_probability_check(pk, sp, disjoint_trials, seed_or_env(seed));
        out["k"] = pk;
        out["value"] = check.closed_form;
        out["estimate"] = check.estimate.value;
        out["se"] = check.estimate.se;
        out["trials"] = disjoint_trials;
      } else {
        if (sn < 1) throw cp::InputError("--n is required");
        if (!(sp > 0.0 && sp < 1.0)) throw cp::DomainError("p must lie in (0, 1)");
        cp::FormulaValue f;
        out["n"] = sn;
        if (what == "expected") {
          f = cp::expected_tau_formula(sn, sp);
        } else {
          if (pk < 1) throw cp::InputError("--k is required");
          f = cp::formula_tau_k(sn, sp, pk);
          out["k"] = pk;
        }
        out["value"] = f.value;
        out["applicable"] = f.applicability != cp::Applicability::outside;
        out["applicability"] = std::string(cp::to_string(f.applicability));
      }
      emit_json(io, out);
    }
  } catch (const cp::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cp::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
