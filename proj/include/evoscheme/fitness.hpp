#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "evoscheme/de.hpp"
#include "evoscheme/schemes.hpp"
#include "evoscheme/targets.hpp"

namespace evoscheme {

/// Objective wired into the DE engine. `point_evaluations` counts calls to
/// training points (the cost unit used in evaluation-budget reports); it
/// stays at zero for objectives that use no training data.
struct FitnessEvaluator {
  FitnessFn fn;
  std::shared_ptr<std::atomic<std::uint64_t>> point_evaluations;
  int dimension = 0;
};

/// log10 of the summed absolute errors between candidate derivative
/// estimates and analytic derivative values over the training points. The
/// sum is clamped below at 1e-300 before the log.
FitnessEvaluator fd_fitness(const StencilTemplate& tmpl, const TargetFunctionPair& target,
                            const TrainingSet& training);

/// log10 of the summed absolute order-condition residuals of the decoded
/// tableau, clamped below at 1e-300.
FitnessEvaluator rk_fitness(int stages, int order);

/// log10 of the accumulated absolute deviation between the candidate
/// multistep trajectory of y' = f'(t) and f itself at the training points.
/// Start-up values come from the starter tableau; divergent trajectories map
/// to +infinity.
FitnessEvaluator ab_fitness(int steps, const TargetFunctionPair& target,
                            const TrainingSet& training, const ButcherTableau& starter);

/// Sum of |candidate - theory| over coefficients, the assessment metric used
/// in result tables next to the training fitness.
double coefficient_error_sum(std::span<const double> candidate, std::span<const double> theory);

} // namespace evoscheme
