#include "evoscheme/reference_schemes.hpp"

#include <stdexcept>
#include <string>

namespace evoscheme {

namespace {

StencilScheme make_stencil(std::vector<int> offsets, std::vector<double> coeffs) {
  StencilScheme s;
  s.offsets = std::move(offsets);
  s.coefficients = std::move(coeffs);
  s.derivative_order = 1;
  return s;
}

ButcherTableau make_tableau(int stages, std::vector<double> genome) {
  return decode_tableau(genome, stages);
}

} // namespace

StencilScheme central_stencil(int order) {
  switch (order) {
    case 2:
      return make_stencil({-1, 1}, {-1.0 / 2, 1.0 / 2});
    case 4:
      return make_stencil({-2, -1, 1, 2}, {1.0 / 12, -2.0 / 3, 2.0 / 3, -1.0 / 12});
    case 6:
      return make_stencil({-3, -2, -1, 1, 2, 3},
                          {-1.0 / 60, 3.0 / 20, -3.0 / 4, 3.0 / 4, -3.0 / 20, 1.0 / 60});
    case 8:
      return make_stencil({-4, -3, -2, -1, 1, 2, 3, 4},
                          {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5,
                           4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280});
    default:
      throw std::invalid_argument("central stencils available for orders 2, 4, 6, 8");
  }
}

StencilScheme forward_stencil(int order) {
  switch (order) {
    case 1:
      return make_stencil({0, 1}, {-1.0, 1.0});
    case 2:
      return make_stencil({0, 1, 2}, {-3.0 / 2, 2.0, -1.0 / 2});
    case 3:
      return make_stencil({0, 1, 2, 3}, {-11.0 / 6, 3.0, -3.0 / 2, 1.0 / 3});
    case 4:
      return make_stencil({0, 1, 2, 3, 4}, {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4});
    case 5:
      return make_stencil({0, 1, 2, 3, 4, 5},
                          {-137.0 / 60, 5.0, -5.0, 10.0 / 3, -5.0 / 4, 1.0 / 5});
    case 6:
      return make_stencil({0, 1, 2, 3, 4, 5, 6},
                          {-49.0 / 20, 6.0, -15.0 / 2, 20.0 / 3, -15.0 / 4, 6.0 / 5, -1.0 / 6});
    default:
      throw std::invalid_argument("forward stencils available for orders 1..6");
  }
}

StencilScheme backward_stencil(int order) {
  return backward_from_forward(forward_stencil(order));
}

StencilScheme staggered_stencil() {
  return make_stencil({-3, -1, 1, 3}, {1.0 / 48, -27.0 / 48, 27.0 / 48, -1.0 / 48});
}

StencilScheme skewed_stencil() {
  return make_stencil({-3, -2, -1, 1}, {1.0 / 8, -1.0 / 3, -1.0 / 4, 11.0 / 24});
}

MultistepScheme adams_bashforth(int order) {
  switch (order) {
    case 1:
      return MultistepScheme{{1.0}};
    case 2:
      return MultistepScheme{{3.0 / 2, -1.0 / 2}};
    case 3:
      return MultistepScheme{{23.0 / 12, -4.0 / 3, 5.0 / 12}};
    case 4:
      return MultistepScheme{{55.0 / 24, -59.0 / 24, 37.0 / 24, -3.0 / 8}};
    case 5:
      return MultistepScheme{{1901.0 / 720, -1387.0 / 360, 109.0 / 30, -637.0 / 360, 251.0 / 720}};
    default:
      throw std::invalid_argument("Adams-Bashforth coefficients available for orders 1..5");
  }
}

ButcherTableau euler_tableau() {
  return make_tableau(1, {1.0});
}

ButcherTableau midpoint_tableau() {
  return make_tableau(2, {0.5, 0.0, 1.0});
}

ButcherTableau kutta3_tableau() {
  return make_tableau(3, {0.5, -1.0, 2.0, 1.0 / 6, 2.0 / 3, 1.0 / 6});
}

ButcherTableau classical_rk4_tableau() {
  return make_tableau(4, {0.5, 0.0, 0.5, 0.0, 0.0, 1.0,
                          1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6});
}

ButcherTableau butcher_rk5_tableau() {
  return make_tableau(6, {1.0 / 4,
                          1.0 / 8, 1.0 / 8,
                          0.0, -1.0 / 2, 1.0,
                          3.0 / 16, 0.0, 0.0, 9.0 / 16,
                          -3.0 / 7, 2.0 / 7, 12.0 / 7, -12.0 / 7, 8.0 / 7,
                          7.0 / 90, 0.0, 32.0 / 90, 12.0 / 90, 32.0 / 90, 7.0 / 90});
}

ButcherTableau rk_starter(int order) {
  switch (order) {
    case 1: return euler_tableau();
    case 2: return midpoint_tableau();
    case 3: return kutta3_tableau();
    case 4: return classical_rk4_tableau();
    case 5: return butcher_rk5_tableau();
    default: throw std::invalid_argument("starter tableaus available for orders 1..5");
  }
}

ButcherTableau evolved_rk3_reference() {
  return make_tableau(3, {0.588205371365611,
                          -0.117042030825954, 0.865356722666391,
                          0.239084361012680, 0.433481022213682, 0.327434616773638});
}

ButcherTableau evolved_rk4_reference() {
  return make_tableau(4, {0.446027096189541,
                          -0.253232894933462, 0.837303080381472,
                          0.284580085103288, 0.018557477374513, 0.696862437522200,
                          0.160860757268920, 0.410796107210609, 0.268240761883735,
                          0.160102373636736});
}

ButcherTableau evolved_rk6_reference() {
  return make_tableau(
      6, {0.142950591304828,
          0.737459236646687, -0.504634588009118,
          0.314129433383799, -0.330273585672633, 0.467497950578092,
          -0.183250006068950, 1.499638222192340, -1.622659422172800, 1.058063997380150,
          -0.139352972771695, -1.278258776673380, 3.335534496262670, -1.848343730854510,
          0.930420984036919,
          0.008109845927407, 0.365341829971006, -0.104294398783786, 0.327711908497619,
          0.318235531221308, 0.084895283166445});
}

std::optional<NamedScheme> named_scheme(std::string_view name) {
  auto order_suffix = [&](std::string_view prefix) -> std::optional<int> {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) {
      return std::nullopt;
    }
    const std::string digits(name.substr(prefix.size()));
    try {
      return std::stoi(digits);
    } catch (...) {
      return std::nullopt;
    }
  };

  try {
    if (auto p = order_suffix("central-")) return central_stencil(*p);
    if (auto p = order_suffix("forward-")) return forward_stencil(*p);
    if (auto p = order_suffix("backward-")) return backward_stencil(*p);
    if (auto p = order_suffix("ab-")) return adams_bashforth(*p);
    if (name == "staggered") return staggered_stencil();
    if (name == "skewed") return skewed_stencil();
    if (name == "euler") return euler_tableau();
    if (name == "midpoint") return midpoint_tableau();
    if (name == "kutta3") return kutta3_tableau();
    if (name == "rk4") return classical_rk4_tableau();
    if (name == "rk5") return butcher_rk5_tableau();
    if (name == "evolved-rk3") return evolved_rk3_reference();
    if (name == "evolved-rk4") return evolved_rk4_reference();
    if (name == "evolved-rk6") return evolved_rk6_reference();
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<StencilScheme> theory_stencil_for(const StencilTemplate& tmpl) {
  try {
    switch (tmpl.kind) {
      case StencilKind::central:
        return central_stencil(tmpl.order);
      case StencilKind::central_with_center: {
        // same coefficients with an exact zero at the center term
        StencilScheme base = central_stencil(tmpl.order);
        StencilScheme s;
        s.offsets = tmpl.offsets;
        s.coefficients.reserve(tmpl.offsets.size());
        std::size_t k = 0;
        for (int n : tmpl.offsets) {
          s.coefficients.push_back(n == 0 ? 0.0 : base.coefficients[k]);
          if (n != 0) ++k;
        }
        return s;
      }
      case StencilKind::forward:
        return forward_stencil(tmpl.order);
      case StencilKind::custom: {
        for (const StencilScheme& cand : {staggered_stencil(), skewed_stencil()}) {
          if (cand.offsets == tmpl.offsets) return cand;
        }
        return std::nullopt;
      }
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

} // namespace evoscheme
