#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "evoscheme/de.hpp"
#include "evoscheme/order_conditions.hpp"
#include "evoscheme/reference_schemes.hpp"
#include "evoscheme/schemes.hpp"
#include "evoscheme/validation.hpp"

namespace evoscheme {

/// Full-precision decimal rendering (17 significant digits round-trips
/// binary64 exactly).
std::string format_double(double v);

nlohmann::json to_json(const StencilScheme& scheme);
nlohmann::json to_json(const ButcherTableau& tableau);
nlohmann::json to_json(const MultistepScheme& scheme);
nlohmann::json to_json(const DeSettings& settings);
nlohmann::json to_json(const RunRecord& record);

/// Parses any of the tagged scheme documents ("stencil" | "rk" | "ab").
NamedScheme scheme_from_json(const nlohmann::json& doc);
NamedScheme load_scheme(const std::filesystem::path& path);
void save_json(const nlohmann::json& doc, const std::filesystem::path& path);

DeSettings de_settings_from_json(const nlohmann::json& doc);

/// CSV with columns generation, best_fitness, cr_avg, f_avg, point_evaluations.
std::string trace_csv(const RunRecord& record);

/// CSV with columns condition_index, lhs_value, target, abs_residual and a
/// trailing sum row.
std::string residual_report_csv(const std::vector<ResidualRow>& rows);

/// CSV with an h column followed by one error column per sweep.
std::string comparison_csv(const ComparisonReport& report);

void write_text(const std::string& text, const std::filesystem::path& path);

} // namespace evoscheme
