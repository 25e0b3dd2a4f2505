#include "evoscheme/fitness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "evoscheme/order_conditions.hpp"

namespace evoscheme {

namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kDivergenceBound = 1e100;

double log10_clamped(double sum) {
  return std::log10(std::max(sum, kLogFloor));
}

std::shared_ptr<std::atomic<std::uint64_t>> make_counter() {
  return std::make_shared<std::atomic<std::uint64_t>>(0);
}

} // namespace

FitnessEvaluator fd_fitness(const StencilTemplate& tmpl, const TargetFunctionPair& target,
                            const TrainingSet& training) {
  const int dim = tmpl.dimension();
  const int n = training.count();
  const double h = target.sample_step;

  // All target samples are fixed by template and training set; take them once.
  auto samples = std::make_shared<std::vector<double>>();
  auto derivs = std::make_shared<std::vector<double>>();
  samples->reserve(static_cast<std::size_t>(n) * dim);
  derivs->reserve(n);
  for (double x : training.points) {
    for (int i = 0; i < dim; ++i) samples->push_back(target.f(x + tmpl.offsets[i] * h));
    derivs->push_back(target.f_prime(x));
  }

  FitnessEvaluator ev;
  ev.dimension = dim;
  ev.point_evaluations = make_counter();
  ev.fn = [samples, derivs, h, n, dim, counter = ev.point_evaluations](
              std::span<const double> genome) {
    double err = 0.0;
    const double* row = samples->data();
    for (int k = 0; k < n; ++k, row += dim) {
      double est = 0.0;
      for (int i = 0; i < dim; ++i) est += genome[i] * row[i];
      err += std::abs(est / h - (*derivs)[k]);
    }
    counter->fetch_add(n, std::memory_order_relaxed);
    return log10_clamped(err);
  };
  return ev;
}

FitnessEvaluator rk_fitness(int stages, int order) {
  if (order < 1 || order > 5) throw std::invalid_argument("rk fitness supports orders 1..5");
  FitnessEvaluator ev;
  ev.dimension = tableau_genome_length(stages);
  ev.point_evaluations = make_counter();
  ev.fn = [stages, order](std::span<const double> genome) {
    const ButcherTableau t = decode_tableau(genome, stages);
    const std::vector<double> residuals = evaluate_conditions(t, order);
    return log10_clamped(residual_sum(residuals));
  };
  return ev;
}

FitnessEvaluator ab_fitness(int steps, const TargetFunctionPair& target,
                            const TrainingSet& training, const ButcherTableau& starter) {
  if (steps < 1 || steps > 5) throw std::invalid_argument("ab fitness supports 1..5 steps");
  const int n = training.count();
  if (n < steps) throw std::invalid_argument("training grid shorter than the multistep window");

  // The grid must be the trajectory: uniform steps starting one step past x_lo.
  const double h = training.points[0] - target.x_lo;
  for (int k = 1; k < n; ++k) {
    const double expected = target.x_lo + (k + 1) * h;
    if (std::abs(training.points[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw std::invalid_argument("ab training set must be a uniform integration grid");
    }
  }
  if (residual_sum(evaluate_conditions(starter, steps)) > 1e-10) {
    throw std::invalid_argument("starter tableau does not reach the multistep order");
  }

  // Everything except the candidate betas is genome-independent: the analytic
  // values on the grid and the starter-produced start-up points.
  auto fp = std::make_shared<std::vector<double>>();
  auto fv = std::make_shared<std::vector<double>>();
  fp->reserve(n + 1);
  fv->reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = target.x_lo + k * h;
    fp->push_back(target.f_prime(t));
    fv->push_back(target.f(t));
  }
  const OdeRhs rhs = [f = target.f_prime](double t, double /*y*/) { return f(t); };
  auto start_y = std::make_shared<std::vector<double>>();
  start_y->push_back((*fv)[0]);
  double start_err = 0.0;
  for (int i = 0; i < steps - 1; ++i) {
    start_y->push_back(rk_step(starter, rhs, target.x_lo + i * h, start_y->back(), h));
    start_err += std::abs(start_y->back() - (*fv)[i + 1]);
  }

  FitnessEvaluator ev;
  ev.dimension = steps;
  ev.point_evaluations = make_counter();
  ev.fn = [fp, fv, start_y, start_err, h, n, steps, counter = ev.point_evaluations](
              std::span<const double> betas) {
    counter->fetch_add(n, std::memory_order_relaxed);
    double err = start_err;
    double y = start_y->back();
    for (int node = steps; node <= n; ++node) {
      double acc = 0.0;
      for (int i = 1; i <= steps; ++i) acc += betas[i - 1] * (*fp)[node - i];
      y += h * acc;
      if (!std::isfinite(y) || std::abs(y) > kDivergenceBound) {
        return std::numeric_limits<double>::infinity();
      }
      err += std::abs(y - (*fv)[node]);
    }
    return log10_clamped(err);
  };
  return ev;
}

double coefficient_error_sum(std::span<const double> candidate, std::span<const double> theory) {
  if (candidate.size() != theory.size()) {
    throw std::invalid_argument("coefficient vectors differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    sum += std::abs(candidate[i] - theory[i]);
  }
  return sum;
}

} // namespace evoscheme
