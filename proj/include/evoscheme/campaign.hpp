#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evoscheme/de.hpp"
#include "evoscheme/fitness.hpp"
#include "evoscheme/reference_schemes.hpp"
#include "evoscheme/schemes.hpp"
#include "evoscheme/targets.hpp"

namespace evoscheme {

/// Five-number summary for box-plot data.
struct FitnessStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

FitnessStats five_number_summary(std::vector<double> values);

/// Outcome of R independent seeded runs of one objective.
struct BestOfReport {
  std::vector<RunRecord> records;
  std::vector<double> per_run_fitness;
  std::size_t winner_index = 0;
  std::vector<double> winner_genome;
  std::optional<double> winner_coefficient_error_sum;  // vs theory, when known
  FitnessStats stats;
};

/// Run j uses seed = settings.seed + j. Runs are independent and execute on
/// up to `threads` workers (0 = hardware concurrency); results are identical
/// to serial execution.
BestOfReport run_campaign(const DeSettings& settings, int runs, int threads,
                          const std::function<FitnessEvaluator()>& make_evaluator);

struct FdEvolveConfig {
  StencilTemplate tmpl = StencilTemplate::central(2);
  std::string target_name = "bell";
  int training_points = 800;
  DeSettings de;        // NP 150, stall 250, max 2500
  int runs = 10;
  int threads = 0;
};

struct RkEvolveConfig {
  int stages = 3;
  int order = 3;
  DeSettings de;        // NP 350; stall/max by order, see defaults below
  int runs = 100;
  int threads = 0;
};

struct AbEvolveConfig {
  int steps = 2;
  std::string target_name = "bell";
  int training_points = 6400;
  DeSettings de;        // NP 150, stall 250, max 2500
  int runs = 10;
  int threads = 0;
};

DeSettings default_fd_settings();
DeSettings default_ab_settings();
/// Low orders use the short budget (stall 500 / max 5000). Order 5 uses the
/// desk budget (stall 2000 / max 20000) unless `full_budget` asks for the
/// full campaign budget (stall 10000 / max 100000).
DeSettings default_rk_settings(int order, bool full_budget = false);

BestOfReport evolve_fd(const FdEvolveConfig& config);
BestOfReport evolve_rk(const RkEvolveConfig& config);
BestOfReport evolve_ab(const AbEvolveConfig& config);

enum class SensitivityAxis { training_points, population_size, step_size };

struct SensitivityPoint {
  double grid_value = 0.0;
  double winner_fitness = 0.0;
  double winner_error_sum = 0.0;              // vs theory coefficients
  std::uint64_t winner_point_evaluations = 0;
};

std::vector<SensitivityPoint> sensitivity_sweep(SensitivityAxis axis,
                                                const std::vector<double>& grid,
                                                const FdEvolveConfig& base);

} // namespace evoscheme
