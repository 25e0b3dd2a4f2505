#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "evoscheme/schemes.hpp"
#include "evoscheme/targets.hpp"

namespace evoscheme {

/// Geometric ladder of step sizes, strictly decreasing.
struct StepLadder {
  double h0 = 0.1;
  double ratio = 0.5;
  int rungs = 10;

  std::vector<double> steps() const;
};

struct MultistepWithStarter {
  MultistepScheme scheme;
  ButcherTableau starter;
};

using SweepScheme = std::variant<StencilScheme, ButcherTableau, MultistepWithStarter>;
using SweepReference = std::variant<TargetFunctionPair, IvpReference>;

/// Errors of one scheme across the ladder. Integrator step sizes are snapped
/// so location - t0 is an exact step multiple; errors are normalized by the
/// analytic value (floor 1e-30); divergence records +infinity.
struct ConvergenceSweep {
  std::string scheme_name;
  double location = 0.0;
  std::vector<double> step_sizes;
  std::vector<double> errors;
};

/// Least-squares slope of log10(error) against log10(h) over the usable
/// window; points below the rounding floor or above the asymptotic regime are
/// excluded.
struct OrderEstimate {
  double slope = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
  int floor_excluded = 0;
};

inline constexpr double kErrorFloor = 1e-13;
inline constexpr double kErrorCeiling = 1e-1;

ConvergenceSweep sweep(const SweepScheme& scheme, const SweepReference& reference,
                       double location, const StepLadder& ladder,
                       const std::string& scheme_name = "scheme");

/// Empty when fewer than two points fall inside the usable window.
std::optional<OrderEstimate> estimate_order(const ConvergenceSweep& sweep);

/// Default evaluation location for a reference: the IVP is probed at t0 + 1,
/// function pairs at 0.
double default_location(const SweepReference& reference);

struct ComparisonReport {
  std::vector<ConvergenceSweep> sweeps;   // one per scheme, shared ladder
};

ComparisonReport compare_schemes(const std::vector<SweepScheme>& schemes,
                                 const std::vector<std::string>& names,
                                 const SweepReference& reference, double location,
                                 const StepLadder& ladder);

} // namespace evoscheme
