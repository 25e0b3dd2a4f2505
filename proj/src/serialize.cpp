#include "evoscheme/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace evoscheme {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json to_json(const StencilScheme& scheme) {
  return json{{"type", "stencil"},
              {"offsets", scheme.offsets},
              {"coefficients", scheme.coefficients},
              {"derivative_order", scheme.derivative_order}};
}

nlohmann::json to_json(const ButcherTableau& tableau) {
  return json{{"type", "rk"},
              {"stage", tableau.stages},
              {"genome", encode_tableau(tableau)}};
}

nlohmann::json to_json(const MultistepScheme& scheme) {
  return json{{"type", "ab"}, {"betas", scheme.betas}};
}

nlohmann::json to_json(const DeSettings& s) {
  return json{{"population_size", s.population_size},
              {"cr0", s.cr0},
              {"f0", s.f0},
              {"gamma", s.gamma},
              {"stall_generations", s.stall_generations},
              {"max_generations", s.max_generations},
              {"reinjection_count", s.reinjection_count},
              {"seed", s.seed}};
}

nlohmann::json to_json(const RunRecord& record) {
  json trace = json::array();
  for (const auto& g : record.trace) {
    trace.push_back({{"generation", g.generation},
                     {"best_fitness", g.best_fitness},
                     {"cr_avg", g.cr_avg},
                     {"f_avg", g.f_avg},
                     {"point_evaluations", g.point_evaluations}});
  }
  return json{{"settings", to_json(record.settings)},
              {"seed", record.settings.seed},
              {"trace", trace},
              {"final_genome", record.final_best.genome},
              {"final_fitness", record.final_best.fitness ? json(*record.final_best.fitness)
                                                          : json(nullptr)},
              {"generations_run", record.generations_run},
              {"termination",
               record.termination == Termination::stalled ? "stalled" : "max_generations"},
              {"genome_evaluations", record.genome_evaluations},
              {"wall_time_seconds", record.wall_time_seconds}};
}

NamedScheme scheme_from_json(const nlohmann::json& doc) {
  const std::string type = doc.at("type").get<std::string>();
  if (type == "stencil") {
    StencilScheme s;
    s.offsets = doc.at("offsets").get<std::vector<int>>();
    s.coefficients = doc.at("coefficients").get<std::vector<double>>();
    s.derivative_order = doc.value("derivative_order", 1);
    if (s.offsets.size() != s.coefficients.size()) {
      throw std::invalid_argument("stencil offsets and coefficients differ in length");
    }
    return s;
  }
  if (type == "rk") {
    const int stages = doc.at("stage").get<int>();
    const auto genome = doc.at("genome").get<std::vector<double>>();
    return decode_tableau(genome, stages);
  }
  if (type == "ab") {
    MultistepScheme s;
    s.betas = doc.at("betas").get<std::vector<double>>();
    if (s.betas.empty()) throw std::invalid_argument("ab scheme needs at least one coefficient");
    return s;
  }
  throw std::invalid_argument("unknown scheme type '" + type + "'");
}

NamedScheme load_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scheme file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse failure in " + path.string() + ": " + e.what());
  }
  return scheme_from_json(doc);
}

void save_json(const nlohmann::json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

DeSettings de_settings_from_json(const nlohmann::json& doc) {
  DeSettings s;
  s.population_size = doc.value("population_size", s.population_size);
  s.cr0 = doc.value("cr0", s.cr0);
  s.f0 = doc.value("f0", s.f0);
  s.gamma = doc.value("gamma", s.gamma);
  s.stall_generations = doc.value("stall_generations", s.stall_generations);
  s.max_generations = doc.value("max_generations", s.max_generations);
  s.reinjection_count = doc.value("reinjection_count", s.reinjection_count);
  s.seed = doc.value("seed", s.seed);
  return s;
}

std::string trace_csv(const RunRecord& record) {
  std::string out = "generation,best_fitness,cr_avg,f_avg,point_evaluations\n";
  for (const auto& g : record.trace) {
    out += std::to_string(g.generation);
    out += ',';
    out += format_double(g.best_fitness);
    out += ',';
    out += format_double(g.cr_avg);
    out += ',';
    out += format_double(g.f_avg);
    out += ',';
    out += std::to_string(g.point_evaluations);
    out += '\n';
  }
  return out;
}

std::string residual_report_csv(const std::vector<ResidualRow>& rows) {
  std::string out = "condition_index,lhs_value,target,abs_residual\n";
  double sum = 0.0;
  for (const auto& r : rows) {
    out += std::to_string(r.index);
    out += ',';
    out += format_double(r.lhs);
    out += ',';
    out += format_double(r.target);
    out += ',';
    out += format_double(r.residual);
    out += '\n';
    sum += r.residual;
  }
  out += "sum,,,";
  out += format_double(sum);
  out += '\n';
  return out;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::string out = "h";
  for (const auto& s : report.sweeps) {
    out += ',';
    out += s.scheme_name;
  }
  out += '\n';
  if (report.sweeps.empty()) return out;
  const std::size_t rows = report.sweeps.front().step_sizes.size();
  for (std::size_t r = 0; r < rows; ++r) {
    out += format_double(report.sweeps.front().step_sizes[r]);
    for (const auto& s : report.sweeps) {
      out += ',';
      out += format_double(s.errors[r]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

} // namespace evoscheme
