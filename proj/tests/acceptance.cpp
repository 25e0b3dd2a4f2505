// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the number of
// failures.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "evoscheme/campaign.hpp"
#include "evoscheme/de.hpp"
#include "evoscheme/fitness.hpp"
#include "evoscheme/order_conditions.hpp"
#include "evoscheme/reference_schemes.hpp"
#include "evoscheme/validation.hpp"

using namespace evoscheme;

namespace {

int g_failures = 0;
std::vector<RunRecord> g_records;  // every evolution run, audited in criterion 8

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

void remember(const BestOfReport& rep) {
  for (const auto& rec : rep.records) g_records.push_back(rec);
}

double max_residual(const std::vector<double>& r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, v);
  return m;
}

// ---- criterion 1: exact audit of the frozen evolved tableaus ----

bool criterion_1() {
  struct Case {
    const char* name;
    ButcherTableau tableau;
    int order;
    double expected;
    double tolerance;
  };
  const Case cases[] = {
      {"3-stage", evolved_rk3_reference(), 3, 5.551e-17, 1e-16},
      {"4-stage", evolved_rk4_reference(), 4, 2.637e-16, 2e-16},
      {"6-stage", evolved_rk6_reference(), 5, 3.038e-14, 1e-15},
  };
  bool pass = true;
  std::string detail = "audited residual sums:";
  for (const auto& c : cases) {
    const double sum = residual_sum(evaluate_conditions(c.tableau, c.order));
    const bool ok = std::abs(sum - c.expected) <= c.tolerance;
    pass = pass && ok;
    detail += std::string(" ") + c.name + "=" + fmt(sum) +
              (ok ? "" : std::string(" (expected ") + fmt(c.expected) + ")");
  }
  report(1, pass, detail);
  return pass;
}

// ---- criterion 2: theory-scheme audits ----

void criterion_2() {
  bool pass = true;
  std::string worst = "all theory rows pass at 1e-12";

  auto check_scheme = [&](const StencilScheme& s, int order, const char* name) {
    const double m = max_residual(taylor_moment_check(s, order));
    if (m >= 1e-12) {
      pass = false;
      worst = std::string("stencil ") + name + " max residual " + fmt(m);
    }
  };
  for (int p : {2, 4, 6, 8}) check_scheme(central_stencil(p), p, "central");
  for (int p : {1, 2, 3, 4, 5, 6}) check_scheme(forward_stencil(p), p, "forward");
  check_scheme(staggered_stencil(), 4, "staggered");
  check_scheme(skewed_stencil(), 3, "skewed");

  for (int k = 1; k <= 5; ++k) {
    const double m = max_residual(ab_moment_check(adams_bashforth(k), k));
    if (m >= 1e-12) {
      pass = false;
      worst = "ab-" + std::to_string(k) + " max residual " + fmt(m);
    }
  }

  const double rk4_sum = residual_sum(evaluate_conditions(classical_rk4_tableau(), 4));
  if (rk4_sum >= 1e-14) {
    pass = false;
    worst = "classical rk4 residual sum " + fmt(rk4_sum);
  }
  report(2, pass, worst + (pass ? "" : ""));
}

// ---- criterion 3: FD evolution at desk scale ----

void criterion_3() {
  FdEvolveConfig c2;
  c2.tmpl = StencilTemplate::central(2);
  c2.training_points = 200;
  c2.de = default_fd_settings();
  c2.de.seed = 1000;
  c2.runs = 3;
  const auto rep2 = evolve_fd(c2);
  remember(rep2);
  const double err2 = rep2.winner_coefficient_error_sum.value();

  FdEvolveConfig c6;
  c6.tmpl = StencilTemplate::central(6);
  c6.training_points = 800;
  c6.de = default_fd_settings();
  c6.de.seed = 2000;
  c6.runs = 3;
  const auto rep6 = evolve_fd(c6);
  remember(rep6);
  const double err6 = rep6.winner_coefficient_error_sum.value();

  const bool pass = err2 <= 1e-3 && err6 <= 1e-2;
  report(3, pass,
         "central-2 coefficient error sum " + fmt(err2) + " (<=1e-3), central-6 " + fmt(err6) +
             " (<=1e-2)");
}

// ---- criterion 4: AB evolution ----

void criterion_4() {
  AbEvolveConfig config;
  config.steps = 2;
  config.training_points = 6400;
  config.de = default_ab_settings();
  config.de.seed = 3000;
  config.runs = 3;
  const auto rep = evolve_ab(config);
  remember(rep);
  const double d1 = std::abs(rep.winner_genome[0] - 1.5);
  const double d2 = std::abs(rep.winner_genome[1] + 0.5);
  const bool pass = d1 <= 1e-2 && d2 <= 1e-2;
  report(4, pass,
         "ab-2 winner offsets from theory: |b1-3/2|=" + fmt(d1) + ", |b2+1/2|=" + fmt(d2) +
             " (<=1e-2 each)");
}

// ---- criterion 5: RK evolution ----

void criterion_5(bool reference_audit_ok) {
  RkEvolveConfig rk3;
  rk3.stages = 3;
  rk3.order = 3;
  rk3.de = default_rk_settings(3);
  rk3.de.seed = 4000;
  rk3.runs = 20;
  const auto rep3 = evolve_rk(rk3);
  remember(rep3);
  const double res3 =
      residual_sum(evaluate_conditions(decode_tableau(rep3.winner_genome, 3), 3));

  RkEvolveConfig rk6;
  rk6.stages = 6;
  rk6.order = 5;
  rk6.de = default_rk_settings(5, false);
  rk6.de.seed = 5000;
  rk6.runs = 10;
  const auto rep6 = evolve_rk(rk6);
  remember(rep6);
  const double res6 =
      residual_sum(evaluate_conditions(decode_tableau(rep6.winner_genome, 6), 5));

  const bool pass = res3 <= 1e-8 && res6 <= 1e-3 && reference_audit_ok;
  report(5, pass,
         "3-stage best-of-20 residual " + fmt(res3) + " (<=1e-8), 6-stage desk best-of-10 " +
             fmt(res6) + " (<=1e-3), frozen-reference audit " +
             (reference_audit_ok ? "confirmed" : "FAILED"));
}

// ---- criterion 6: convergence-order verification ----

void criterion_6() {
  struct Case {
    std::string name;
    SweepScheme scheme;
    SweepReference reference;
    double nominal;
  };
  const auto exp_pair = exponential_target();
  const auto ivp = linear_ivp();
  std::vector<Case> cases;
  for (int p : {2, 4, 6}) {
    cases.push_back({"central-" + std::to_string(p), central_stencil(p), exp_pair, double(p)});
  }
  for (int p : {1, 2, 3, 4}) {
    cases.push_back({"forward-" + std::to_string(p), forward_stencil(p), exp_pair, double(p)});
  }
  cases.push_back({"rk4", classical_rk4_tableau(), ivp, 4.0});
  cases.push_back({"evolved-rk6", evolved_rk6_reference(), ivp, 5.0});
  cases.push_back(
      {"ab-2", MultistepWithStarter{adams_bashforth(2), midpoint_tableau()}, exp_pair, 2.0});
  cases.push_back(
      {"ab-4", MultistepWithStarter{adams_bashforth(4), classical_rk4_tableau()}, exp_pair, 4.0});

  bool pass = true;
  std::string detail = "slopes:";
  for (const auto& c : cases) {
    const double location = default_location(c.reference);
    const auto sw = sweep(c.scheme, c.reference, location, StepLadder{}, c.name);
    const auto est = estimate_order(sw);
    if (!est) {
      pass = false;
      detail += " " + c.name + "=indeterminate";
      continue;
    }
    const bool ok = std::abs(est->slope - c.nominal) <= 0.4;
    pass = pass && ok;
    char buf[64];
    std::snprintf(buf, sizeof(buf), " %s=%.2f%s", c.name.c_str(), est->slope, ok ? "" : "(!)");
    detail += buf;
  }
  report(6, pass, detail);
}

// ---- criterion 7: sensitivity echoes ----

void criterion_7() {
  FdEvolveConfig base;
  base.tmpl = StencilTemplate::central(6);
  base.training_points = 200;
  base.de = default_fd_settings();
  base.de.seed = 6000;
  base.runs = 2;

  bool pass = true;
  std::string detail;

  // (a) training-point grid: error sums strictly decreasing
  const auto n_points = sensitivity_sweep(SensitivityAxis::training_points,
                                          {1.0, 25.0, 200.0}, base);
  const bool a_ok = n_points[0].winner_error_sum > n_points[1].winner_error_sum &&
                    n_points[1].winner_error_sum > n_points[2].winner_error_sum;
  pass = pass && a_ok;
  detail += "N grid error sums " + fmt(n_points[0].winner_error_sum) + " > " +
            fmt(n_points[1].winner_error_sum) + " > " + fmt(n_points[2].winner_error_sum) +
            (a_ok ? "" : " (NOT decreasing)");

  // (b) sample-step grid at the default point budget: winner error sums
  // within one decade
  FdEvolveConfig h_base = base;
  h_base.training_points = 800;
  const auto h_points =
      sensitivity_sweep(SensitivityAxis::step_size, {0.005, 0.01, 0.02}, h_base);
  double h_min = h_points[0].winner_error_sum, h_max = h_min;
  for (const auto& p : h_points) {
    h_min = std::min(h_min, p.winner_error_sum);
    h_max = std::max(h_max, p.winner_error_sum);
  }
  const bool b_ok = h_max <= 10.0 * h_min;
  pass = pass && b_ok;
  detail += "; step-size spread " + fmt(h_max / h_min) + "x (<=10x)" + (b_ok ? "" : " (!)");

  // (c) NP 150 beats NP 50 on paired seeds
  int np_wins = 0;
  for (std::uint64_t seed : {7000ULL, 7100ULL}) {
    FdEvolveConfig small = base, large = base;
    small.de.population_size = 50;
    large.de.population_size = 150;
    small.de.seed = seed;
    large.de.seed = seed;
    small.runs = 1;
    large.runs = 1;
    const auto rep_small = evolve_fd(small);
    const auto rep_large = evolve_fd(large);
    remember(rep_small);
    remember(rep_large);
    if (rep_large.winner_coefficient_error_sum.value() <
        rep_small.winner_coefficient_error_sum.value()) {
      ++np_wins;
    }
  }
  const bool c_ok = np_wins == 2;
  pass = pass && c_ok;
  detail += "; NP150 beat NP50 in " + std::to_string(np_wins) + "/2 paired seeds";

  report(7, pass, detail);
}

// ---- criterion 8: engine properties ----

void criterion_8() {
  bool pass = true;
  std::string detail;

  // determinism over five configurations
  auto sphere = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  bool deterministic = true;
  for (int k = 0; k < 5; ++k) {
    DeSettings s;
    s.population_size = 20 + 9 * k;
    s.stall_generations = 40 + 5 * k;
    s.max_generations = 80 + 10 * k;
    s.reinjection_count = k;
    s.seed = 9000 + 17 * static_cast<std::uint64_t>(k);
    const int dim = 2 + k;
    const auto a = run(s, dim, sphere);
    const auto b = run(s, dim, sphere);
    g_records.push_back(a);
    deterministic = deterministic && a.final_best.genome == b.final_best.genome &&
                    a.generations_run == b.generations_run &&
                    a.termination == b.termination && a.trace.size() == b.trace.size();
    for (std::size_t i = 0; deterministic && i < a.trace.size(); ++i) {
      deterministic = a.trace[i].best_fitness == b.trace[i].best_fitness &&
                      a.trace[i].cr_avg == b.trace[i].cr_avg &&
                      a.trace[i].f_avg == b.trace[i].f_avg;
    }
  }
  pass = pass && deterministic;
  detail += std::string("determinism ") + (deterministic ? "ok" : "VIOLATED");

  // best-fitness monotonicity over every recorded run
  bool monotone = true;
  for (const auto& rec : g_records) {
    for (std::size_t i = 1; i < rec.trace.size(); ++i) {
      if (rec.trace[i].best_fitness > rec.trace[i - 1].best_fitness) monotone = false;
    }
  }
  pass = pass && monotone;
  detail += "; monotone best over " + std::to_string(g_records.size()) + " runs " +
            (monotone ? "ok" : "VIOLATED");

  // control parameters inside truncation bounds after every generation,
  // asserted in-loop on a hand-composed engine loop
  bool bounds_ok = true;
  {
    DeSettings s;
    s.population_size = 24;
    s.seed = 777;
    Rng rng(s.seed);
    auto pop = initialize_population(s, 3, rng);
    for (auto& ind : pop) ind.fitness = sphere(ind.genome);
    ControlAverages avg{s.cr0, s.f0};
    for (int gen = 0; gen < 60; ++gen) {
      const auto previous = pop;
      std::vector<double> ok_cr, ok_f;
      for (std::size_t i = 0; i < pop.size(); ++i) {
        auto mutant = mutate(i, previous, previous[i].f, rng);
        auto trial = crossover(previous[i].genome, mutant, previous[i].cr, rng);
        const double tf = sphere(trial);
        if (select(pop[i], std::move(trial), tf)) {
          ok_cr.push_back(previous[i].cr);
          ok_f.push_back(previous[i].f);
        }
      }
      avg = adapt_control_parameters(ok_cr, ok_f, avg, pop, s.gamma, rng);
      for (const auto& ind : pop) {
        if (ind.cr < 0.0 || ind.cr > 1.0 || ind.f < 0.1 || ind.f > 1.0) bounds_ok = false;
      }
      std::size_t best = 0;
      for (std::size_t i = 1; i < pop.size(); ++i) {
        if (*pop[i].fitness < *pop[best].fitness) best = i;
      }
      reinject(pop, best, s.reinjection_count, avg, rng);
      for (auto& ind : pop) {
        if (!ind.fitness) ind.fitness = sphere(ind.genome);
      }
    }
  }
  pass = pass && bounds_ok;
  detail += std::string("; control bounds ") + (bounds_ok ? "ok" : "VIOLATED");

  // 10-D sphere below 1e-6 in at least 9 of 10 seeds
  int sphere_hits = 0;
  for (int seed = 0; seed < 10; ++seed) {
    DeSettings s;
    s.population_size = 150;
    s.stall_generations = 2000;
    s.max_generations = 2000;
    s.seed = 10000 + static_cast<std::uint64_t>(seed);
    const auto rec = run(s, 10, sphere);
    g_records.push_back(rec);
    if (*rec.final_best.fitness < 1e-6) ++sphere_hits;
  }
  const bool sphere_ok = sphere_hits >= 9;
  pass = pass && sphere_ok;
  detail += "; sphere<1e-6 in " + std::to_string(sphere_hits) + "/10 seeds";

  report(8, pass, detail);
}

} // namespace

int main() {
  const bool audit_ok = criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5(audit_ok);
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
