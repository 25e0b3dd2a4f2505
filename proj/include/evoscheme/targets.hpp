#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evoscheme {

/// Analytic function pair used as training/validation ground truth.
struct TargetFunctionPair {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double sample_step = 0.01;
};

/// Initial value problem with a closed-form solution.
struct IvpReference {
  std::string name;
  std::function<double(double, double)> rhs;
  std::function<double(double)> exact;
  double t0 = 0.0;
  double y0 = 0.0;
};

/// Bell curve pair, the derivative-training target. Domain [-4, 4], h = 0.01.
TargetFunctionPair bell_target();

/// Steep exponential pair used for validating derivative and multistep
/// schemes on unseen data. Domain [-1, 1].
TargetFunctionPair exponential_target();

/// Non-autonomous linear IVP with closed-form solution, used for validating
/// Runge-Kutta schemes.
IvpReference linear_ivp();

const std::vector<TargetFunctionPair>& builtin_targets();
std::optional<TargetFunctionPair> find_target(std::string_view name);

/// Sample locations a fitness evaluator compares at.
struct TrainingSet {
  std::vector<double> points;

  int count() const { return static_cast<int>(points.size()); }

  /// n consecutive samples at the pair's sample step, centered on the
  /// domain midpoint. The window plus max_abs_offset * sample_step of
  /// stencil reach always stays inside the domain; when n * sample_step
  /// would not fit, the spacing is compressed just enough to fit.
  static TrainingSet sampled(const TargetFunctionPair& pair, int n, int max_abs_offset);

  /// Trajectory nodes t_1..t_n for integration training: n equal steps of
  /// size (x_hi - x_lo)/n starting at x_lo.
  static TrainingSet integration_grid(const TargetFunctionPair& pair, int n);
};

} // namespace evoscheme
