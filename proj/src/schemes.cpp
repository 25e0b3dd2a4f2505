#include "evoscheme/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace evoscheme {

double apply_stencil(const StencilScheme& scheme, const ScalarFn& f, double x, double h) {
  double acc = 0.0;
  for (std::size_t i = 0; i < scheme.offsets.size(); ++i) {
    acc += scheme.coefficients[i] * f(x + scheme.offsets[i] * h);
  }
  return acc / h;
}

StencilScheme backward_from_forward(const StencilScheme& forward) {
  StencilScheme b = forward;
  for (auto& n : b.offsets) n = -n;
  for (auto& m : b.coefficients) m = -m;
  return b;
}

static void check_distinct(const std::vector<int>& offsets) {
  std::set<int> seen(offsets.begin(), offsets.end());
  if (seen.size() != offsets.size()) {
    throw std::invalid_argument("stencil offsets must be distinct");
  }
}

StencilTemplate StencilTemplate::central(int order, bool with_center_term) {
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument("central stencil order must be a positive even number");
  }
  StencilTemplate t;
  t.kind = with_center_term ? StencilKind::central_with_center : StencilKind::central;
  t.order = order;
  for (int q = order / 2; q >= 1; --q) t.offsets.push_back(-q);
  if (with_center_term) t.offsets.push_back(0);
  for (int q = 1; q <= order / 2; ++q) t.offsets.push_back(q);
  return t;
}

StencilTemplate StencilTemplate::forward(int order) {
  if (order < 1) throw std::invalid_argument("forward stencil order must be >= 1");
  StencilTemplate t;
  t.kind = StencilKind::forward;
  t.order = order;
  for (int q = 0; q <= order; ++q) t.offsets.push_back(q);
  return t;
}

StencilTemplate StencilTemplate::custom(std::vector<int> offsets, int order) {
  if (offsets.empty()) throw std::invalid_argument("custom stencil needs at least one offset");
  if (order < 1) throw std::invalid_argument("stencil order must be >= 1");
  check_distinct(offsets);
  StencilTemplate t;
  t.kind = StencilKind::custom;
  t.order = order;
  t.offsets = std::move(offsets);
  return t;
}

int StencilTemplate::max_abs_offset() const {
  int m = 0;
  for (int n : offsets) m = std::max(m, std::abs(n));
  return m;
}

StencilScheme StencilTemplate::instantiate(std::span<const double> coefficients) const {
  if (coefficients.size() != offsets.size()) {
    throw std::invalid_argument("coefficient count does not match template offsets");
  }
  StencilScheme s;
  s.offsets = offsets;
  s.coefficients.assign(coefficients.begin(), coefficients.end());
  return s;
}

std::string StencilTemplate::describe() const {
  char buf[64];
  switch (kind) {
    case StencilKind::central:
      std::snprintf(buf, sizeof(buf), "central-%d", order);
      break;
    case StencilKind::central_with_center:
      std::snprintf(buf, sizeof(buf), "central-%d+center", order);
      break;
    case StencilKind::forward:
      std::snprintf(buf, sizeof(buf), "forward-%d", order);
      break;
    case StencilKind::custom:
      std::snprintf(buf, sizeof(buf), "custom-%d", order);
      break;
  }
  return buf;
}

int tableau_genome_length(int stages) {
  return stages * (stages - 1) / 2 + stages;
}

ButcherTableau decode_tableau(std::span<const double> genome, int stages) {
  if (stages < 1) throw std::invalid_argument("tableau needs at least one stage");
  if (static_cast<int>(genome.size()) != tableau_genome_length(stages)) {
    throw std::invalid_argument("genome length does not match stage count");
  }
  ButcherTableau t;
  t.stages = stages;
  t.a.assign(static_cast<std::size_t>(stages) * stages, 0.0);
  std::size_t idx = 0;
  for (int i = 1; i < stages; ++i) {
    for (int j = 0; j < i; ++j) {
      t.a[static_cast<std::size_t>(i) * stages + j] = genome[idx++];
    }
  }
  t.w.assign(genome.begin() + static_cast<std::ptrdiff_t>(idx), genome.end());
  t.c.assign(stages, 0.0);
  for (int i = 0; i < stages; ++i) {
    double sum = 0.0;
    for (int j = 0; j < i; ++j) sum += t.a_at(i, j);
    t.c[i] = sum;
  }
  return t;
}

std::vector<double> encode_tableau(const ButcherTableau& tableau) {
  std::vector<double> g;
  g.reserve(tableau_genome_length(tableau.stages));
  for (int i = 1; i < tableau.stages; ++i) {
    for (int j = 0; j < i; ++j) g.push_back(tableau.a_at(i, j));
  }
  g.insert(g.end(), tableau.w.begin(), tableau.w.end());
  return g;
}

std::string format_tableau(const ButcherTableau& tableau) {
  std::string out;
  char buf[64];
  for (int i = 0; i < tableau.stages; ++i) {
    std::snprintf(buf, sizeof(buf), "%12.9f |", tableau.c[i]);
    out += buf;
    for (int j = 0; j < i; ++j) {
      std::snprintf(buf, sizeof(buf), " %12.9f", tableau.a_at(i, j));
      out += buf;
    }
    out += '\n';
  }
  out += "-------------+\n";
  out += "             |";
  for (int i = 0; i < tableau.stages; ++i) {
    std::snprintf(buf, sizeof(buf), " %12.9f", tableau.w[i]);
    out += buf;
  }
  out += '\n';
  return out;
}

double rk_step(const ButcherTableau& tableau, const OdeRhs& f, double t, double y, double h) {
  const int s = tableau.stages;
  std::vector<double> k(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    double yi = y;
    for (int j = 0; j < i; ++j) yi += tableau.a_at(i, j) * k[j];
    k[i] = h * f(t + tableau.c[i] * h, yi);
  }
  double out = y;
  for (int i = 0; i < s; ++i) out += tableau.w[i] * k[i];
  return out;
}

double ab_step(const MultistepScheme& scheme, const OdeRhs& f,
               std::span<const std::pair<double, double>> history, double h) {
  const int k = scheme.step_count();
  if (static_cast<int>(history.size()) != k) {
    throw std::invalid_argument("multistep history length does not match step count");
  }
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += scheme.betas[i] * f(history[i].first, history[i].second);
  }
  return history[0].second + h * acc;
}

namespace {

constexpr double kDivergenceBound = 1e100;

bool blown_up(double y) { return !std::isfinite(y) || std::abs(y) > kDivergenceBound; }

} // namespace

Trajectory integrate(const ButcherTableau& tableau, const OdeRhs& f,
                     double t0, double y0, double h, int n_steps) {
  Trajectory traj;
  traj.t.reserve(n_steps + 1);
  traj.y.reserve(n_steps + 1);
  traj.t.push_back(t0);
  traj.y.push_back(y0);
  double y = y0;
  for (int i = 0; i < n_steps; ++i) {
    y = rk_step(tableau, f, t0 + i * h, y, h);
    if (blown_up(y)) {
      traj.diverged = true;
      return traj;
    }
    traj.t.push_back(t0 + (i + 1) * h);
    traj.y.push_back(y);
  }
  return traj;
}

Trajectory integrate(const MultistepScheme& scheme, const ButcherTableau& starter,
                     const OdeRhs& f, double t0, double y0, double h, int n_steps) {
  const int k = scheme.step_count();
  Trajectory traj;
  traj.t.reserve(n_steps + 1);
  traj.y.reserve(n_steps + 1);
  traj.t.push_back(t0);
  traj.y.push_back(y0);

  // f values at the trajectory nodes, newest last
  std::vector<double> fvals;
  fvals.reserve(n_steps + 1);
  fvals.push_back(f(t0, y0));

  double y = y0;
  for (int i = 0; i < std::min(k - 1, n_steps); ++i) {
    y = rk_step(starter, f, t0 + i * h, y, h);
    if (blown_up(y)) {
      traj.diverged = true;
      return traj;
    }
    traj.t.push_back(t0 + (i + 1) * h);
    traj.y.push_back(y);
    fvals.push_back(f(traj.t.back(), y));
  }
  for (int n = k; n <= n_steps; ++n) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += scheme.betas[i - 1] * fvals[n - i];
    y = traj.y.back() + h * acc;
    if (blown_up(y)) {
      traj.diverged = true;
      return traj;
    }
    traj.t.push_back(t0 + n * h);
    traj.y.push_back(y);
    fvals.push_back(f(traj.t.back(), y));
  }
  return traj;
}

} // namespace evoscheme
