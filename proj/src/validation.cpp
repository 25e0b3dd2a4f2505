#include "evoscheme/validation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace evoscheme {

namespace {

constexpr double kNormFloor = 1e-30;

double normalized_error(double numerical, double analytical) {
  return std::abs(numerical - analytical) / std::max(std::abs(analytical), kNormFloor);
}

struct IntegrationProblem {
  OdeRhs rhs;
  std::function<double(double)> exact;
  double t0 = 0.0;
  double y0 = 0.0;
};

// Integrators read a function pair as the quadrature problem y' = f'(t)
// started on f at the left domain edge.
IntegrationProblem as_integration_problem(const SweepReference& reference) {
  if (std::holds_alternative<IvpReference>(reference)) {
    const auto& ivp = std::get<IvpReference>(reference);
    return {ivp.rhs, ivp.exact, ivp.t0, ivp.y0};
  }
  const auto& pair = std::get<TargetFunctionPair>(reference);
  IntegrationProblem prob;
  prob.rhs = [fp = pair.f_prime](double t, double /*y*/) { return fp(t); };
  prob.exact = pair.f;
  prob.t0 = pair.x_lo;
  prob.y0 = pair.f(pair.x_lo);
  return prob;
}

} // namespace

std::vector<double> StepLadder::steps() const {
  if (h0 <= 0.0 || ratio <= 0.0 || ratio >= 1.0 || rungs < 1) {
    throw std::invalid_argument("ladder needs h0 > 0, ratio in (0,1) and at least one rung");
  }
  std::vector<double> hs;
  hs.reserve(rungs);
  double h = h0;
  for (int j = 0; j < rungs; ++j) {
    hs.push_back(h);
    h *= ratio;
  }
  return hs;
}

ConvergenceSweep sweep(const SweepScheme& scheme, const SweepReference& reference,
                       double location, const StepLadder& ladder,
                       const std::string& scheme_name) {
  ConvergenceSweep result;
  result.scheme_name = scheme_name;
  result.location = location;

  if (std::holds_alternative<StencilScheme>(scheme)) {
    if (!std::holds_alternative<TargetFunctionPair>(reference)) {
      throw std::invalid_argument("stencil sweeps need a function pair reference");
    }
    const auto& stencil = std::get<StencilScheme>(scheme);
    const auto& pair = std::get<TargetFunctionPair>(reference);
    const double truth = pair.f_prime(location);
    for (double h : ladder.steps()) {
      const double est = apply_stencil(stencil, pair.f, location, h);
      result.step_sizes.push_back(h);
      result.errors.push_back(normalized_error(est, truth));
    }
    return result;
  }

  const IntegrationProblem prob = as_integration_problem(reference);
  const double span = location - prob.t0;
  if (span <= 0.0) throw std::invalid_argument("location must lie past the integration start");

  for (double h : ladder.steps()) {
    const long long n = std::llround(span / h);
    if (n < 1) throw std::invalid_argument("step size exceeds the integration span");
    const double h_eff = span / static_cast<double>(n);
    Trajectory traj;
    if (std::holds_alternative<ButcherTableau>(scheme)) {
      traj = integrate(std::get<ButcherTableau>(scheme), prob.rhs, prob.t0, prob.y0,
                       h_eff, static_cast<int>(n));
    } else {
      const auto& ms = std::get<MultistepWithStarter>(scheme);
      traj = integrate(ms.scheme, ms.starter, prob.rhs, prob.t0, prob.y0,
                       h_eff, static_cast<int>(n));
    }
    result.step_sizes.push_back(h_eff);
    if (traj.diverged) {
      result.errors.push_back(std::numeric_limits<double>::infinity());
    } else {
      result.errors.push_back(normalized_error(traj.y.back(), prob.exact(traj.t.back())));
    }
  }
  return result;
}

std::optional<OrderEstimate> estimate_order(const ConvergenceSweep& sweep) {
  std::vector<double> xs, ys;
  int floor_excluded = 0;
  for (std::size_t i = 0; i < sweep.errors.size(); ++i) {
    const double e = sweep.errors[i];
    if (!std::isfinite(e)) continue;
    if (e < kErrorFloor) {
      ++floor_excluded;
      continue;
    }
    if (e > kErrorCeiling) continue;
    xs.push_back(std::log10(sweep.step_sizes[i]));
    ys.push_back(std::log10(e));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 2) return std::nullopt;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double sxx_c = sxx - sx * sx / n;
  const double sxy_c = sxy - sx * sy / n;
  const double syy_c = syy - sy * sy / n;

  OrderEstimate est;
  est.slope = sxy_c / sxx_c;
  est.r_squared = (syy_c > 0.0) ? (sxy_c * sxy_c) / (sxx_c * syy_c) : 1.0;
  est.points_used = n;
  est.floor_excluded = floor_excluded;
  return est;
}

double default_location(const SweepReference& reference) {
  if (std::holds_alternative<IvpReference>(reference)) {
    return std::get<IvpReference>(reference).t0 + 1.0;
  }
  return 0.0;
}

ComparisonReport compare_schemes(const std::vector<SweepScheme>& schemes,
                                 const std::vector<std::string>& names,
                                 const SweepReference& reference, double location,
                                 const StepLadder& ladder) {
  if (!names.empty() && names.size() != schemes.size()) {
    throw std::invalid_argument("scheme/name count mismatch");
  }
  ComparisonReport report;
  report.sweeps.reserve(schemes.size());
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    const std::string name = names.empty() ? ("scheme" + std::to_string(i)) : names[i];
    report.sweeps.push_back(sweep(schemes[i], reference, location, ladder, name));
  }
  return report;
}

} // namespace evoscheme
