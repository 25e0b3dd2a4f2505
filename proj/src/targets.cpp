#include "evoscheme/targets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evoscheme {

TargetFunctionPair bell_target() {
  TargetFunctionPair p;
  p.name = "bell";
  p.f = [](double x) { return 1.5 * std::exp(-0.5 * x * x); };
  p.f_prime = [](double x) { return -1.5 * x * std::exp(-0.5 * x * x); };
  p.x_lo = -4.0;
  p.x_hi = 4.0;
  p.sample_step = 0.01;
  return p;
}

TargetFunctionPair exponential_target() {
  TargetFunctionPair p;
  p.name = "exp";
  p.f = [](double x) { return 2.0 * std::exp(18.0 * x); };
  p.f_prime = [](double x) { return 36.0 * std::exp(18.0 * x); };
  p.x_lo = -1.0;
  p.x_hi = 1.0;
  p.sample_step = 0.01;
  return p;
}

IvpReference linear_ivp() {
  IvpReference ivp;
  ivp.name = "ivp";
  ivp.rhs = [](double t, double y) { return 1.0 - t + 4.0 * y; };
  ivp.exact = [](double x) { return 0.25 * x - 3.0 / 16.0 + (19.0 / 16.0) * std::exp(4.0 * x); };
  ivp.t0 = 0.0;
  ivp.y0 = 1.0;
  return ivp;
}

const std::vector<TargetFunctionPair>& builtin_targets() {
  static const std::vector<TargetFunctionPair> targets = {bell_target(), exponential_target()};
  return targets;
}

std::optional<TargetFunctionPair> find_target(std::string_view name) {
  for (const auto& t : builtin_targets()) {
    if (t.name == name) return t;
  }
  return std::nullopt;
}

TrainingSet TrainingSet::sampled(const TargetFunctionPair& pair, int n, int max_abs_offset) {
  if (n < 1) throw std::invalid_argument("training set needs at least one point");
  const double inset = max_abs_offset * pair.sample_step;
  const double lo = pair.x_lo + inset;
  const double hi = pair.x_hi - inset;
  if (lo >= hi) throw std::invalid_argument("stencil offsets do not fit inside the target domain");
  TrainingSet set;
  set.points.reserve(n);
  const double center = 0.5 * (lo + hi);
  if (n == 1) {
    set.points.push_back(center);
    return set;
  }
  const double spacing = std::min(pair.sample_step, (hi - lo) / (n - 1));
  const double start = center - 0.5 * (n - 1) * spacing;
  for (int k = 0; k < n; ++k) set.points.push_back(start + k * spacing);
  return set;
}

TrainingSet TrainingSet::integration_grid(const TargetFunctionPair& pair, int n) {
  if (n < 1) throw std::invalid_argument("integration grid needs at least one step");
  TrainingSet set;
  set.points.reserve(n);
  const double h = (pair.x_hi - pair.x_lo) / n;
  for (int k = 1; k <= n; ++k) set.points.push_back(pair.x_lo + k * h);
  return set;
}

} // namespace evoscheme
