#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "evoscheme/schemes.hpp"

namespace evoscheme {

/// Analytically derived coefficient sets, used as audit oracles and as
/// comparison baselines in validation sweeps.

StencilScheme central_stencil(int order);    // orders 2, 4, 6, 8
StencilScheme forward_stencil(int order);    // orders 1..6
StencilScheme backward_stencil(int order);   // mirror of forward

/// Non-standard stencil on offsets {-3,-1,1,3}; order 4 by antisymmetry.
StencilScheme staggered_stencil();

/// Non-standard one-sided stencil on offsets {-3,-2,-1,1}; order 3.
StencilScheme skewed_stencil();

MultistepScheme adams_bashforth(int order);  // orders 1..5

ButcherTableau euler_tableau();
ButcherTableau midpoint_tableau();           // 2-stage, order 2
ButcherTableau kutta3_tableau();             // 3-stage, order 3
ButcherTableau classical_rk4_tableau();      // 4-stage, order 4
ButcherTableau butcher_rk5_tableau();        // 6-stage, order 5

/// Starter scheme of the requested order for multistep start-up values.
ButcherTableau rk_starter(int order);        // orders 1..5

/// Best coefficient sets found in long evolution campaigns, frozen as
/// regression references for audits and validation comparisons.
ButcherTableau evolved_rk3_reference();      // 3-stage, order 3
ButcherTableau evolved_rk4_reference();      // 4-stage, order 4
ButcherTableau evolved_rk6_reference();      // 6-stage, order 5

using NamedScheme = std::variant<StencilScheme, ButcherTableau, MultistepScheme>;

/// Catalog lookup for CLI arguments: "central-4", "forward-2", "backward-3",
/// "staggered", "skewed", "ab-3", "euler", "midpoint", "kutta3", "rk4",
/// "rk5", "evolved-rk3", "evolved-rk4", "evolved-rk6".
std::optional<NamedScheme> named_scheme(std::string_view name);

/// Theory coefficients a template's winner is assessed against, when they
/// exist for the template's offsets and order.
std::optional<StencilScheme> theory_stencil_for(const StencilTemplate& tmpl);

} // namespace evoscheme
