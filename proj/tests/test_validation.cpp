#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "evoscheme/reference_schemes.hpp"
#include "evoscheme/validation.hpp"

using namespace evoscheme;

namespace {

ConvergenceSweep synthetic(double scale, double power, int rungs = 6, double h0 = 0.1) {
  ConvergenceSweep s;
  s.scheme_name = "synthetic";
  double h = h0;
  for (int j = 0; j < rungs; ++j) {
    s.step_sizes.push_back(h);
    s.errors.push_back(scale * std::pow(h, power));
    h *= 0.5;
  }
  return s;
}

} // namespace

TEST_CASE("ladder construction") {
  const StepLadder ladder{0.1, 0.5, 4};
  const auto hs = ladder.steps();
  REQUIRE(hs.size() == 4);
  CHECK(hs[0] == 0.1);
  CHECK(hs[3] == doctest::Approx(0.0125));
  CHECK_THROWS_AS((StepLadder{0.1, 1.5, 4}.steps()), std::invalid_argument);
}

TEST_CASE("estimate_order recovers exact power laws") {
  const auto est = estimate_order(synthetic(3.0, 2.0, 3));
  REQUIRE(est.has_value());
  CHECK(est->slope == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(est->r_squared == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(est->points_used == 3);
  CHECK(est->floor_excluded == 0);

  for (int p = 1; p <= 8; ++p) {
    const auto e = estimate_order(synthetic(0.4, p));
    REQUIRE(e.has_value());
    CHECK(e->slope == doctest::Approx(double(p)).epsilon(1e-10));
  }
}

TEST_CASE("estimate_order drops floor points and infinities") {
  auto sweep = synthetic(3.0, 2.0, 4);
  sweep.step_sizes.push_back(1e-7);
  sweep.errors.push_back(1e-15);  // below the rounding floor
  sweep.step_sizes.push_back(0.2);
  sweep.errors.push_back(std::numeric_limits<double>::infinity());
  const auto est = estimate_order(sweep);
  REQUIRE(est.has_value());
  CHECK(est->floor_excluded == 1);
  CHECK(est->points_used == 4);
  CHECK(est->slope == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("estimate_order is indeterminate without two usable points") {
  ConvergenceSweep sweep;
  sweep.step_sizes = {0.1, 0.05, 0.025};
  sweep.errors = {1e-15, 1e-16, 5e-17};
  CHECK(!estimate_order(sweep).has_value());
}

TEST_CASE("slope is invariant under error scaling") {
  const auto a = estimate_order(synthetic(1.0, 3.0));
  const auto b = estimate_order(synthetic(7.0, 3.0));
  REQUIRE((a && b));
  CHECK(a->slope == doctest::Approx(b->slope).epsilon(1e-12));
}

TEST_CASE("stencil sweep shows the truncation decay rate") {
  const auto sweep_result =
      sweep(central_stencil(2), exponential_target(), 0.0, StepLadder{}, "central-2");
  REQUIRE(sweep_result.errors.size() == 10);
  // ratio of consecutive pre-floor errors approaches 4 per halving
  for (std::size_t i = 3; i + 1 < 8; ++i) {
    const double ratio = sweep_result.errors[i] / sweep_result.errors[i + 1];
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
  const auto est = estimate_order(sweep_result);
  REQUIRE(est.has_value());
  CHECK(est->slope == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("integrator sweep on the linear IVP shows fourth order") {
  const auto sweep_result =
      sweep(classical_rk4_tableau(), linear_ivp(), 1.0, StepLadder{}, "rk4");
  const auto est = estimate_order(sweep_result);
  REQUIRE(est.has_value());
  CHECK(est->slope > 3.7);
  CHECK(est->slope < 4.3);
}

TEST_CASE("exact scheme sits on the rounding floor") {
  TargetFunctionPair quad;
  quad.name = "quad";
  quad.f = [](double x) { return x * x; };
  quad.f_prime = [](double x) { return 2.0 * x; };
  quad.x_lo = -2.0;
  quad.x_hi = 2.0;
  const auto sweep_result = sweep(central_stencil(2), quad, 1.0, StepLadder{}, "central-2");
  for (double e : sweep_result.errors) CHECK(e <= 1e-12);
  CHECK(!estimate_order(sweep_result).has_value());
}

TEST_CASE("multistep sweep with its starter converges at scheme order") {
  const MultistepWithStarter ab2{adams_bashforth(2), midpoint_tableau()};
  const auto sweep_result = sweep(ab2, exponential_target(), 0.0, StepLadder{}, "ab-2");
  const auto est = estimate_order(sweep_result);
  REQUIRE(est.has_value());
  CHECK(est->slope == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("integrator steps snap to divide the span") {
  const auto sweep_result =
      sweep(classical_rk4_tableau(), linear_ivp(), 1.0, StepLadder{0.3, 0.5, 3}, "rk4");
  for (double h : sweep_result.step_sizes) {
    const double n = 1.0 / h;
    CHECK(n == doctest::Approx(std::round(n)).epsilon(1e-12));
  }
}

TEST_CASE("stencil sweeps require a function-pair reference") {
  CHECK_THROWS_AS(sweep(central_stencil(2), linear_ivp(), 1.0, StepLadder{}),
                  std::invalid_argument);
}

TEST_CASE("diverging schemes record infinite error and stay out of the fit") {
  const MultistepWithStarter wild{MultistepScheme{{1e308}}, euler_tableau()};
  const auto sweep_result = sweep(wild, exponential_target(), 0.0, StepLadder{0.1, 0.5, 3});
  for (double e : sweep_result.errors) CHECK(e == std::numeric_limits<double>::infinity());
  CHECK(!estimate_order(sweep_result).has_value());
}

TEST_CASE("compare_schemes lines up one column per scheme") {
  const std::vector<SweepScheme> schemes{classical_rk4_tableau(), evolved_rk6_reference()};
  const std::vector<std::string> names{"rk4", "evolved-rk6"};
  const auto report = compare_schemes(schemes, names, linear_ivp(), 1.0, StepLadder{});
  REQUIRE(report.sweeps.size() == 2);
  CHECK(report.sweeps[0].scheme_name == "rk4");
  CHECK(report.sweeps[1].scheme_name == "evolved-rk6");
  const auto rk4_est = estimate_order(report.sweeps[0]);
  const auto rk6_est = estimate_order(report.sweeps[1]);
  REQUIRE((rk4_est && rk6_est));
  CHECK(rk4_est->slope == doctest::Approx(4.0).epsilon(0.1));
  CHECK(rk6_est->slope == doctest::Approx(5.0).epsilon(0.1));

  const auto single = compare_schemes({classical_rk4_tableau()}, {"rk4"}, linear_ivp(), 1.0,
                                      StepLadder{});
  CHECK(single.sweeps.size() == 1);
}

TEST_CASE("evolved four-stage scheme tracks the classical one") {
  const std::vector<SweepScheme> schemes{classical_rk4_tableau(), evolved_rk4_reference()};
  const auto report =
      compare_schemes(schemes, {"rk4", "evolved-rk4"}, linear_ivp(), 1.0, StepLadder{});
  const auto classical = estimate_order(report.sweeps[0]);
  const auto evolved = estimate_order(report.sweeps[1]);
  REQUIRE((classical && evolved));
  CHECK(classical->slope == doctest::Approx(4.0).epsilon(0.1));
  CHECK(evolved->slope == doctest::Approx(4.0).epsilon(0.1));
  // little mutual deviation above the rounding floor
  for (std::size_t i = 0; i < report.sweeps[0].errors.size(); ++i) {
    const double a = report.sweeps[0].errors[i];
    const double b = report.sweeps[1].errors[i];
    if (a > 1e-12 && b > 1e-12) {
      CHECK(a / b < 30.0);
      CHECK(b / a < 30.0);
    }
  }
}

TEST_CASE("recovered sixth-order forward stencil bends at small steps") {
  StencilScheme recovered;
  recovered.offsets = {0, 1, 2, 3, 4, 5, 6};
  recovered.coefficients = {-2.449833503, 5.999156723, -7.498280965, 6.664893406,
                            -3.749059104, 1.199779258, -0.166655814};
  const auto sweep_result = sweep(recovered, exponential_target(), 0.0, StepLadder{});
  std::size_t argmin = 0;
  for (std::size_t i = 1; i < sweep_result.errors.size(); ++i) {
    if (sweep_result.errors[i] < sweep_result.errors[argmin]) argmin = i;
  }
  CHECK(argmin > 0);
  CHECK(argmin + 1 < sweep_result.errors.size());
}

TEST_CASE("default locations") {
  CHECK(default_location(linear_ivp()) == 1.0);
  CHECK(default_location(exponential_target()) == 0.0);
}
