#pragma once

#include <span>
#include <string>
#include <vector>

#include "evoscheme/schemes.hpp"

namespace evoscheme {

/// Exact target value kept as an integer pair so 1/120 etc. never goes
/// through a decimal literal.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// One Runge-Kutta order condition: a polynomial in the tableau entries and
/// its exact right-hand side.
struct OrderCondition {
  int order;                                  // order at which it first appears
  Rational target;
  double (*lhs)(const ButcherTableau&);
  const char* expression;                     // human-readable summation
};

struct ConditionSet {
  int order = 0;
  std::span<const OrderCondition> conditions;

  std::size_t count() const { return conditions.size(); }
};

/// All conditions needed for the requested order, cumulative over lower
/// orders. Supported orders: 1..5 (counts 1, 2, 4, 8, 17).
ConditionSet condition_set(int order);

/// |lhs - target| per condition, in listing order.
std::vector<double> evaluate_conditions(const ButcherTableau& tableau, int order);

/// Moment residuals of a first-derivative stencil: |sum m_i| at degree 0,
/// |sum m_i n_i - 1| at degree 1, |sum m_i n_i^j| for 2 <= j <= claimed_order.
std::vector<double> taylor_moment_check(const StencilScheme& scheme, int claimed_order);

/// Adams-Bashforth quadrature residuals: |sum_i beta_i (1-i)^{j-1} - 1/j| for
/// j = 1..claimed_order.
std::vector<double> ab_moment_check(const MultistepScheme& scheme, int claimed_order);

double residual_sum(std::span<const double> residuals);

/// Table row for audit reports.
struct ResidualRow {
  int index = 0;        // 1-based condition / moment index
  double lhs = 0.0;
  double target = 0.0;
  double residual = 0.0;
  std::string expression;
};

std::vector<ResidualRow> condition_report(const ButcherTableau& tableau, int order);
std::vector<ResidualRow> moment_report(const StencilScheme& scheme, int claimed_order);
std::vector<ResidualRow> ab_moment_report(const MultistepScheme& scheme, int claimed_order);

/// Stage/order admissibility for explicit schemes: minimum stage count that
/// can reach a given order, and maximum order reachable at a stage count
/// (1,2,3,4 stages -> orders 1,2,3,4; 5 stages -> 4; 6 stages -> 5).
int min_stage_for_order(int order);
int max_order_for_stage(int stages);

} // namespace evoscheme
