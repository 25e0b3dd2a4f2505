#include "evoscheme/order_conditions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace evoscheme {

namespace {

// The sums run over the strictly lower triangle only; every skipped term is
// an exact zero for an explicit tableau, so the floating-point result is
// identical to summing over all indices.

double cond_w(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i) v += t.w[i];
  return v;
}

double cond_wc(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i) v += t.w[i] * t.c[i];
  return v;
}

double cond_wc2(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i) v += t.w[i] * t.c[i] * t.c[i];
  return v;
}

double cond_wac(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j) v += t.w[i] * t.a_at(i, j) * t.c[j];
  return v;
}

double cond_wc3(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i) v += t.w[i] * t.c[i] * t.c[i] * t.c[i];
  return v;
}

double cond_wcac(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j) v += t.w[i] * t.c[i] * t.a_at(i, j) * t.c[j];
  return v;
}

double cond_wac2(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j) v += t.w[i] * t.a_at(i, j) * t.c[j] * t.c[j];
  return v;
}

double cond_waac(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k) v += t.w[i] * t.a_at(i, j) * t.a_at(j, k) * t.c[k];
  return v;
}

double cond_wc4(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i) v += t.w[i] * t.c[i] * t.c[i] * t.c[i] * t.c[i];
  return v;
}

double cond_wc2ac(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j) v += t.w[i] * t.c[i] * t.c[i] * t.a_at(i, j) * t.c[j];
  return v;
}

double cond_wcac2(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j) v += t.w[i] * t.c[i] * t.a_at(i, j) * t.c[j] * t.c[j];
  return v;
}

double cond_wcaac(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k)
        v += t.w[i] * t.c[i] * t.a_at(i, j) * t.a_at(j, k) * t.c[k];
  return v;
}

// One shared weight against two independent a-rows of the same stage.
double cond_wacac_fork(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < i; ++k)
        v += t.w[i] * t.a_at(i, j) * t.c[j] * t.a_at(i, k) * t.c[k];
  return v;
}

double cond_wac3(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j)
      v += t.w[i] * t.a_at(i, j) * t.c[j] * t.c[j] * t.c[j];
  return v;
}

double cond_wacac_chain(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k)
        v += t.w[i] * t.a_at(i, j) * t.c[j] * t.a_at(j, k) * t.c[k];
  return v;
}

double cond_waac2(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k)
        v += t.w[i] * t.a_at(i, j) * t.a_at(j, k) * t.c[k] * t.c[k];
  return v;
}

double cond_waaac(const ButcherTableau& t) {
  double v = 0.0;
  for (int i = 0; i < t.stages; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k)
        for (int l = 0; l < k; ++l)
          v += t.w[i] * t.a_at(i, j) * t.a_at(j, k) * t.a_at(k, l) * t.c[l];
  return v;
}

constexpr OrderCondition kConditions[] = {
    {1, {1, 1}, cond_w, "sum w_i"},
    {2, {1, 2}, cond_wc, "sum w_i c_i"},
    {3, {1, 3}, cond_wc2, "sum w_i c_i^2"},
    {3, {1, 6}, cond_wac, "sum w_i a_ij c_j"},
    {4, {1, 4}, cond_wc3, "sum w_i c_i^3"},
    {4, {1, 8}, cond_wcac, "sum w_i c_i a_ij c_j"},
    {4, {1, 12}, cond_wac2, "sum w_i a_ij c_j^2"},
    {4, {1, 24}, cond_waac, "sum w_i a_ij a_jk c_k"},
    {5, {1, 5}, cond_wc4, "sum w_i c_i^4"},
    {5, {1, 10}, cond_wc2ac, "sum w_i c_i^2 a_ij c_j"},
    {5, {1, 15}, cond_wcac2, "sum w_i c_i a_ij c_j^2"},
    {5, {1, 30}, cond_wcaac, "sum w_i c_i a_ij a_jk c_k"},
    {5, {1, 20}, cond_wacac_fork, "sum w_i a_ij c_j a_ik c_k"},
    {5, {1, 20}, cond_wac3, "sum w_i a_ij c_j^3"},
    {5, {1, 40}, cond_wacac_chain, "sum w_i a_ij c_j a_jk c_k"},
    {5, {1, 60}, cond_waac2, "sum w_i a_ij a_jk c_k^2"},
    {5, {1, 120}, cond_waaac, "sum w_i a_ij a_jk a_kl c_l"},
};

constexpr std::size_t kCountByOrder[] = {0, 1, 2, 4, 8, 17};

} // namespace

ConditionSet condition_set(int order) {
  if (order < 1 || order > 5) {
    throw std::invalid_argument("order conditions are available for orders 1..5 only");
  }
  ConditionSet set;
  set.order = order;
  set.conditions = std::span<const OrderCondition>(kConditions, kCountByOrder[order]);
  return set;
}

std::vector<double> evaluate_conditions(const ButcherTableau& tableau, int order) {
  const ConditionSet set = condition_set(order);
  std::vector<double> residuals;
  residuals.reserve(set.count());
  for (const auto& cond : set.conditions) {
    residuals.push_back(std::abs(cond.lhs(tableau) - cond.target.value()));
  }
  return residuals;
}

namespace {

double moment(const StencilScheme& s, int degree) {
  double v = 0.0;
  for (std::size_t i = 0; i < s.offsets.size(); ++i) {
    double p = 1.0;
    for (int j = 0; j < degree; ++j) p *= s.offsets[i];
    v += s.coefficients[i] * p;
  }
  return v;
}

double ab_lhs(const MultistepScheme& s, int j) {
  double v = 0.0;
  for (int i = 1; i <= s.step_count(); ++i) {
    double p = 1.0;
    for (int e = 0; e < j - 1; ++e) p *= (1.0 - i);
    v += s.betas[i - 1] * p;
  }
  return v;
}

} // namespace

std::vector<double> taylor_moment_check(const StencilScheme& scheme, int claimed_order) {
  if (claimed_order < 1) throw std::invalid_argument("claimed order must be >= 1");
  std::vector<double> residuals;
  residuals.reserve(claimed_order + 1);
  for (int j = 0; j <= claimed_order; ++j) {
    const double target = (j == 1) ? 1.0 : 0.0;
    residuals.push_back(std::abs(moment(scheme, j) - target));
  }
  return residuals;
}

std::vector<double> ab_moment_check(const MultistepScheme& scheme, int claimed_order) {
  if (claimed_order < 1) throw std::invalid_argument("claimed order must be >= 1");
  std::vector<double> residuals;
  residuals.reserve(claimed_order);
  for (int j = 1; j <= claimed_order; ++j) {
    residuals.push_back(std::abs(ab_lhs(scheme, j) - 1.0 / j));
  }
  return residuals;
}

double residual_sum(std::span<const double> residuals) {
  double v = 0.0;
  for (double r : residuals) v += r;
  return v;
}

std::vector<ResidualRow> condition_report(const ButcherTableau& tableau, int order) {
  const ConditionSet set = condition_set(order);
  std::vector<ResidualRow> rows;
  rows.reserve(set.count());
  int idx = 1;
  for (const auto& cond : set.conditions) {
    const double lhs = cond.lhs(tableau);
    const double target = cond.target.value();
    rows.push_back({idx++, lhs, target, std::abs(lhs - target), cond.expression});
  }
  return rows;
}

std::vector<ResidualRow> moment_report(const StencilScheme& scheme, int claimed_order) {
  std::vector<ResidualRow> rows;
  char expr[48];
  for (int j = 0; j <= claimed_order; ++j) {
    const double lhs = moment(scheme, j);
    const double target = (j == 1) ? 1.0 : 0.0;
    std::snprintf(expr, sizeof(expr), "sum m_i n_i^%d", j);
    rows.push_back({j + 1, lhs, target, std::abs(lhs - target), expr});
  }
  return rows;
}

std::vector<ResidualRow> ab_moment_report(const MultistepScheme& scheme, int claimed_order) {
  std::vector<ResidualRow> rows;
  char expr[48];
  for (int j = 1; j <= claimed_order; ++j) {
    const double lhs = ab_lhs(scheme, j);
    const double target = 1.0 / j;
    std::snprintf(expr, sizeof(expr), "sum beta_i (1-i)^%d", j - 1);
    rows.push_back({j, lhs, target, std::abs(lhs - target), expr});
  }
  return rows;
}

int min_stage_for_order(int order) {
  switch (order) {
    case 1: return 1;
    case 2: return 2;
    case 3: return 3;
    case 4: return 4;
    case 5: return 6;
    default: throw std::invalid_argument("supported orders are 1..5");
  }
}

int max_order_for_stage(int stages) {
  switch (stages) {
    case 1: return 1;
    case 2: return 2;
    case 3: return 3;
    case 4: return 4;
    case 5: return 4;
    case 6: return 5;
    default: throw std::invalid_argument("supported stage counts are 1..6");
  }
}

} // namespace evoscheme
