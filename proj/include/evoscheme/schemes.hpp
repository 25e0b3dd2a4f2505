#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace evoscheme {

using ScalarFn = std::function<double(double)>;
using OdeRhs = std::function<double(double, double)>;

/// First-derivative stencil: f'(x) ~ (1/h) * sum_i m_i * f(x + n_i * h).
struct StencilScheme {
  std::vector<int> offsets;          // distinct integers n_i
  std::vector<double> coefficients;  // m_i, same length
  int derivative_order = 1;
};

double apply_stencil(const StencilScheme& scheme, const ScalarFn& f, double x, double h);

/// Mirror of a forward scheme: offsets and coefficients negated (odd derivative).
StencilScheme backward_from_forward(const StencilScheme& forward);

enum class StencilKind { central, central_with_center, forward, custom };

/// Offset skeleton a coefficient vector is trained against.
struct StencilTemplate {
  StencilKind kind = StencilKind::custom;
  int order = 0;              // accuracy order aimed for
  std::vector<int> offsets;   // resolved skeleton

  static StencilTemplate central(int order, bool with_center_term = false);
  static StencilTemplate forward(int order);
  static StencilTemplate custom(std::vector<int> offsets, int order);

  int dimension() const { return static_cast<int>(offsets.size()); }
  int max_abs_offset() const;
  StencilScheme instantiate(std::span<const double> coefficients) const;
  std::string describe() const;
};

/// Explicit Runge-Kutta scheme. `a` is s x s row-major with a[i][j] = 0 for
/// j >= i; nodes c are the row sums of a, so c[0] = 0.
struct ButcherTableau {
  int stages = 0;
  std::vector<double> a;
  std::vector<double> w;
  std::vector<double> c;

  double a_at(int i, int j) const { return a[static_cast<std::size_t>(i) * stages + j]; }
};

/// Genome layout: (a21 a31 a32 a41 ... a_s,s-1 w1 ... ws), length s(s-1)/2 + s.
int tableau_genome_length(int stages);
ButcherTableau decode_tableau(std::span<const double> genome, int stages);
std::vector<double> encode_tableau(const ButcherTableau& tableau);
std::string format_tableau(const ButcherTableau& tableau);

double rk_step(const ButcherTableau& tableau, const OdeRhs& f, double t, double y, double h);

/// Adams-Bashforth: y_n = y_{n-1} + h * sum_{i=1..k} beta_i f(t_{n-i}, y_{n-i}).
struct MultistepScheme {
  std::vector<double> betas;  // beta_1 .. beta_k

  int step_count() const { return static_cast<int>(betas.size()); }
};

/// `history` is the last k (t, y) pairs, most recent first.
double ab_step(const MultistepScheme& scheme, const OdeRhs& f,
               std::span<const std::pair<double, double>> history, double h);

struct Trajectory {
  std::vector<double> t;
  std::vector<double> y;
  bool diverged = false;
};

Trajectory integrate(const ButcherTableau& tableau, const OdeRhs& f,
                     double t0, double y0, double h, int n_steps);

/// AB integration; the starter tableau generates the k-1 points after y0.
Trajectory integrate(const MultistepScheme& scheme, const ButcherTableau& starter,
                     const OdeRhs& f, double t0, double y0, double h, int n_steps);

} // namespace evoscheme
