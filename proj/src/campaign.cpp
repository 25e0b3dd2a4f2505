#include "evoscheme/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "evoscheme/order_conditions.hpp"

namespace evoscheme {

FitnessStats five_number_summary(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("no values to summarize");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double pos = p * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - lo;
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
  };
  return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

BestOfReport run_campaign(const DeSettings& settings, int runs, int threads,
                          const std::function<FitnessEvaluator()>& make_evaluator) {
  if (runs < 1) throw std::invalid_argument("campaign needs at least one run");

  auto execute = [&](int j) {
    FitnessEvaluator evaluator = make_evaluator();
    DeSettings s = settings;
    s.seed = settings.seed + static_cast<std::uint64_t>(j);
    return run(s, evaluator.dimension, evaluator.fn, evaluator.point_evaluations.get());
  };

  BestOfReport report;
  report.records.resize(runs);

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, runs);
  if (workers == 1) {
    for (int j = 0; j < runs; ++j) report.records[j] = execute(j);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (int j = next.fetch_add(1); j < runs; j = next.fetch_add(1)) {
          report.records[j] = execute(j);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  report.per_run_fitness.reserve(runs);
  for (const auto& rec : report.records) {
    report.per_run_fitness.push_back(rec.final_best.fitness.value());
  }
  report.winner_index = static_cast<std::size_t>(
      std::min_element(report.per_run_fitness.begin(), report.per_run_fitness.end()) -
      report.per_run_fitness.begin());
  report.winner_genome = report.records[report.winner_index].final_best.genome;
  report.stats = five_number_summary(report.per_run_fitness);
  return report;
}

DeSettings default_fd_settings() {
  DeSettings s;
  s.population_size = 150;
  s.stall_generations = 250;
  s.max_generations = 2500;
  return s;
}

DeSettings default_ab_settings() {
  return default_fd_settings();
}

DeSettings default_rk_settings(int order, bool full_budget) {
  DeSettings s;
  s.population_size = 350;
  if (order <= 4) {
    s.stall_generations = 500;
    s.max_generations = 5000;
  } else if (full_budget) {
    s.stall_generations = 10000;
    s.max_generations = 100000;
  } else {
    s.stall_generations = 2000;
    s.max_generations = 20000;
  }
  return s;
}

BestOfReport evolve_fd(const FdEvolveConfig& config) {
  const auto target = find_target(config.target_name);
  if (!target) throw std::invalid_argument("unknown target '" + config.target_name + "'");
  const TrainingSet training =
      TrainingSet::sampled(*target, config.training_points, config.tmpl.max_abs_offset());

  BestOfReport report =
      run_campaign(config.de, config.runs, config.threads,
                   [&config, &target, &training] {
                     return fd_fitness(config.tmpl, *target, training);
                   });

  if (const auto theory = theory_stencil_for(config.tmpl)) {
    report.winner_coefficient_error_sum =
        coefficient_error_sum(report.winner_genome, theory->coefficients);
  }
  return report;
}

BestOfReport evolve_rk(const RkEvolveConfig& config) {
  if (config.order < 1 || config.order > 5) {
    throw std::invalid_argument("rk evolution supports orders 1..5");
  }
  if (config.stages < 1 || config.stages > 6) {
    throw std::invalid_argument("rk evolution supports 1..6 stages");
  }
  if (config.stages < min_stage_for_order(config.order) ||
      config.order > max_order_for_stage(config.stages)) {
    throw std::invalid_argument("stage count cannot reach the requested order");
  }
  return run_campaign(config.de, config.runs, config.threads,
                      [&config] { return rk_fitness(config.stages, config.order); });
}

BestOfReport evolve_ab(const AbEvolveConfig& config) {
  const auto target = find_target(config.target_name);
  if (!target) throw std::invalid_argument("unknown target '" + config.target_name + "'");
  const TrainingSet training = TrainingSet::integration_grid(*target, config.training_points);
  const ButcherTableau starter = rk_starter(config.steps);

  BestOfReport report =
      run_campaign(config.de, config.runs, config.threads,
                   [&config, &target, &training, &starter] {
                     return ab_fitness(config.steps, *target, training, starter);
                   });

  report.winner_coefficient_error_sum =
      coefficient_error_sum(report.winner_genome, adams_bashforth(config.steps).betas);
  return report;
}

std::vector<SensitivityPoint> sensitivity_sweep(SensitivityAxis axis,
                                                const std::vector<double>& grid,
                                                const FdEvolveConfig& base) {
  if (grid.empty()) throw std::invalid_argument("sensitivity grid is empty");
  std::vector<SensitivityPoint> points;
  points.reserve(grid.size());
  for (double value : grid) {
    FdEvolveConfig config = base;
    switch (axis) {
      case SensitivityAxis::training_points:
        config.training_points = static_cast<int>(std::llround(value));
        break;
      case SensitivityAxis::population_size:
        config.de.population_size = static_cast<int>(std::llround(value));
        break;
      case SensitivityAxis::step_size:
        break;  // handled below via the target's sample step
    }

    BestOfReport report;
    if (axis == SensitivityAxis::step_size) {
      auto target = find_target(config.target_name);
      if (!target) throw std::invalid_argument("unknown target '" + config.target_name + "'");
      target->sample_step = value;
      const TrainingSet training =
          TrainingSet::sampled(*target, config.training_points, config.tmpl.max_abs_offset());
      report = run_campaign(config.de, config.runs, config.threads,
                            [&config, &target, &training] {
                              return fd_fitness(config.tmpl, *target, training);
                            });
      if (const auto theory = theory_stencil_for(config.tmpl)) {
        report.winner_coefficient_error_sum =
            coefficient_error_sum(report.winner_genome, theory->coefficients);
      }
    } else {
      report = evolve_fd(config);
    }

    SensitivityPoint p;
    p.grid_value = value;
    p.winner_fitness = report.per_run_fitness[report.winner_index];
    p.winner_error_sum = report.winner_coefficient_error_sum.value_or(
        std::numeric_limits<double>::quiet_NaN());
    const auto& trace = report.records[report.winner_index].trace;
    p.winner_point_evaluations = trace.empty() ? 0 : trace.back().point_evaluations;
    points.push_back(p);
  }
  return points;
}

} // namespace evoscheme
