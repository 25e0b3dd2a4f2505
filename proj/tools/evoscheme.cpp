#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evoscheme/campaign.hpp"
#include "evoscheme/order_conditions.hpp"
#include "evoscheme/reference_schemes.hpp"
#include "evoscheme/serialize.hpp"
#include "evoscheme/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace evoscheme;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitAllDiverged = 2;

struct CommonDeFlags {
  DeSettings de;
  int runs = 0;
  int threads = 0;
  std::string out_root;
};

void add_de_flags(CLI::App* cmd, CommonDeFlags& flags, const DeSettings& defaults, int runs_default) {
  flags.de = defaults;
  flags.runs = runs_default;
  cmd->add_option("--np", flags.de.population_size, "population size NP")
      ->capture_default_str();
  cmd->add_option("--cr0", flags.de.cr0, "initial crossover rate")->capture_default_str();
  cmd->add_option("--f0", flags.de.f0, "initial scaling factor")->capture_default_str();
  cmd->add_option("--gamma", flags.de.gamma, "Cauchy half-width for CR and F adaptation")
      ->capture_default_str();
  cmd->add_option("--stall", flags.de.stall_generations,
                  "stop after this many generations without improvement")
      ->capture_default_str();
  cmd->add_option("--max-gens", flags.de.max_generations, "maximum number of generations")
      ->capture_default_str();
  cmd->add_option("--reinject", flags.de.reinjection_count,
                  "individuals replaced by fresh ones each generation")
      ->capture_default_str();
  cmd->add_option("--seed", flags.de.seed, "master seed; run j uses seed+j")
      ->capture_default_str();
  cmd->add_option("--runs", flags.runs, "number of independent runs")->capture_default_str();
  cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  cmd->add_option("--out", flags.out_root, "output root (default $EVOSCHEME_OUT or .)");
  cmd->set_config("--config", "", "flat key=value config file; command-line flags win");
}

fs::path make_output_dir(const std::string& out_root, const std::string& leaf) {
  fs::path root;
  if (!out_root.empty()) {
    root = out_root;
  } else if (const char* env = std::getenv("EVOSCHEME_OUT")) {
    root = env;
  } else {
    root = ".";
  }
  fs::path dir = root / leaf;
  fs::create_directories(dir);
  return dir;
}

std::string runs_csv(const BestOfReport& report) {
  std::string out = "run,seed,fitness,generations,termination\n";
  for (std::size_t j = 0; j < report.records.size(); ++j) {
    const auto& rec = report.records[j];
    out += std::to_string(j);
    out += ',';
    out += std::to_string(rec.settings.seed);
    out += ',';
    out += format_double(report.per_run_fitness[j]);
    out += ',';
    out += std::to_string(rec.generations_run);
    out += ',';
    out += rec.termination == Termination::stalled ? "stalled" : "max_generations";
    out += '\n';
  }
  out += "stats,min=" + format_double(report.stats.min);
  out += ",q1=" + format_double(report.stats.q1);
  out += ",median=" + format_double(report.stats.median);
  out += ",q3=" + format_double(report.stats.q3);
  out += ",max=" + format_double(report.stats.max);
  out += '\n';
  return out;
}

void write_run_records(const BestOfReport& report, const fs::path& dir) {
  char name[64];
  for (std::size_t j = 0; j < report.records.size(); ++j) {
    std::snprintf(name, sizeof(name), "run_%03zu.json", j);
    save_json(to_json(report.records[j]), dir / name);
    std::snprintf(name, sizeof(name), "run_%03zu_trace.csv", j);
    write_text(trace_csv(report.records[j]), dir / name);
  }
  write_text(runs_csv(report), dir / "runs.csv");
}

int finish_evolve(const BestOfReport& report) {
  bool any_finite = false;
  for (double f : report.per_run_fitness) {
    if (std::isfinite(f)) any_finite = true;
  }
  if (!any_finite) {
    std::fprintf(stderr, "all runs diverged\n");
    return kExitAllDiverged;
  }
  return kExitOk;
}

std::string coefficients_csv(std::span<const double> winner,
                             const std::optional<StencilScheme>& theory,
                             std::optional<double> error_sum) {
  std::string out = "coefficient_index,computed,theory\n";
  for (std::size_t i = 0; i < winner.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(winner[i]);
    out += ',';
    out += theory ? format_double(theory->coefficients[i]) : std::string("-");
    out += '\n';
  }
  if (error_sum) {
    out += "sum_of_absolute_errors,,";
    out += format_double(*error_sum);
    out += '\n';
  }
  return out;
}

// ---- evolve fd ----

struct FdFlags {
  CommonDeFlags common;
  std::string kind = "central";
  int order = 2;
  std::vector<int> offsets;
  std::string target = "bell";
  int points = 800;
};

int run_evolve_fd(const FdFlags& flags) {
  FdEvolveConfig config;
  if (flags.kind == "central") {
    config.tmpl = StencilTemplate::central(flags.order, false);
  } else if (flags.kind == "central+center") {
    config.tmpl = StencilTemplate::central(flags.order, true);
  } else if (flags.kind == "forward") {
    config.tmpl = StencilTemplate::forward(flags.order);
  } else if (flags.kind == "custom") {
    config.tmpl = StencilTemplate::custom(flags.offsets, flags.order);
  } else {
    throw std::invalid_argument("unknown stencil kind '" + flags.kind + "'");
  }
  config.target_name = flags.target;
  config.training_points = flags.points;
  config.de = flags.common.de;
  config.runs = flags.common.runs;
  config.threads = flags.common.threads;

  const BestOfReport report = evolve_fd(config);

  const fs::path dir = make_output_dir(
      flags.common.out_root,
      "evolve-fd-" + config.tmpl.describe() + "-seed" + std::to_string(config.de.seed));
  json snapshot{{"command", "evolve fd"},
                {"kind", flags.kind},
                {"order", flags.order},
                {"offsets", config.tmpl.offsets},
                {"target", config.target_name},
                {"training_points", config.training_points},
                {"runs", config.runs},
                {"de", to_json(config.de)}};
  save_json(snapshot, dir / "config.json");
  write_run_records(report, dir);

  const StencilScheme winner = config.tmpl.instantiate(report.winner_genome);
  save_json(to_json(winner), dir / "winner.json");
  write_text(residual_report_csv(moment_report(winner, config.tmpl.order)),
             dir / "winner_audit.csv");
  write_text(coefficients_csv(report.winner_genome, theory_stencil_for(config.tmpl),
                              report.winner_coefficient_error_sum),
             dir / "table_row.csv");

  std::printf("winner fitness %s", format_double(report.stats.min).c_str());
  if (report.winner_coefficient_error_sum) {
    std::printf(", coefficient error sum %s",
                format_double(*report.winner_coefficient_error_sum).c_str());
  }
  std::printf("\nartifacts in %s\n", dir.string().c_str());
  return finish_evolve(report);
}

// ---- evolve rk ----

struct RkFlags {
  CommonDeFlags common;
  int stages = 3;
  int order = 3;
  bool full_budget = false;
};

int run_evolve_rk(const RkFlags& flags, bool budget_flags_set) {
  RkEvolveConfig config;
  config.stages = flags.stages;
  config.order = flags.order;
  config.de = flags.common.de;
  if (!budget_flags_set) {
    const DeSettings budget = default_rk_settings(flags.order, flags.full_budget);
    config.de.stall_generations = budget.stall_generations;
    config.de.max_generations = budget.max_generations;
  }
  if (flags.order == 5 && !flags.full_budget) {
    std::fprintf(stderr,
                 "note: running order 5 with the desk budget (stall %d / max %d); "
                 "reference-level accuracy needs --full-budget\n",
                 config.de.stall_generations, config.de.max_generations);
  }
  config.runs = flags.common.runs;
  config.threads = flags.common.threads;

  const BestOfReport report = evolve_rk(config);

  const fs::path dir = make_output_dir(
      flags.common.out_root, "evolve-rk-s" + std::to_string(config.stages) + "-o" +
                                 std::to_string(config.order) + "-seed" +
                                 std::to_string(config.de.seed));
  json snapshot{{"command", "evolve rk"},
                {"stages", config.stages},
                {"order", config.order},
                {"runs", config.runs},
                {"de", to_json(config.de)}};
  save_json(snapshot, dir / "config.json");
  write_run_records(report, dir);

  const ButcherTableau winner = decode_tableau(report.winner_genome, config.stages);
  save_json(to_json(winner), dir / "winner.json");
  write_text(residual_report_csv(condition_report(winner, config.order)),
             dir / "winner_audit.csv");
  write_text(format_tableau(winner), dir / "winner_tableau.txt");

  const double residual = residual_sum(evaluate_conditions(winner, config.order));
  std::printf("winner fitness %s, residual sum %s\nartifacts in %s\n",
              format_double(report.stats.min).c_str(), format_double(residual).c_str(),
              dir.string().c_str());
  return finish_evolve(report);
}

// ---- evolve ab ----

struct AbFlags {
  CommonDeFlags common;
  int steps = 2;
  std::string target = "bell";
  int points = 6400;
};

int run_evolve_ab(const AbFlags& flags) {
  AbEvolveConfig config;
  config.steps = flags.steps;
  config.target_name = flags.target;
  config.training_points = flags.points;
  config.de = flags.common.de;
  config.runs = flags.common.runs;
  config.threads = flags.common.threads;

  const BestOfReport report = evolve_ab(config);

  const fs::path dir = make_output_dir(
      flags.common.out_root,
      "evolve-ab-k" + std::to_string(config.steps) + "-seed" + std::to_string(config.de.seed));
  json snapshot{{"command", "evolve ab"},
                {"steps", config.steps},
                {"target", config.target_name},
                {"training_points", config.training_points},
                {"runs", config.runs},
                {"de", to_json(config.de)}};
  save_json(snapshot, dir / "config.json");
  write_run_records(report, dir);

  const MultistepScheme winner{report.winner_genome};
  save_json(to_json(winner), dir / "winner.json");
  write_text(residual_report_csv(ab_moment_report(winner, config.steps)),
             dir / "winner_audit.csv");
  std::string row = "beta_index,computed,theory\n";
  const MultistepScheme theory = adams_bashforth(config.steps);
  for (int i = 0; i < config.steps; ++i) {
    row += std::to_string(i + 1) + ',' + format_double(winner.betas[i]) + ',' +
           format_double(theory.betas[i]) + '\n';
  }
  row += "sum_of_absolute_errors,," +
         format_double(report.winner_coefficient_error_sum.value()) + '\n';
  write_text(row, dir / "table_row.csv");

  std::printf("winner fitness %s, coefficient error sum %s\nartifacts in %s\n",
              format_double(report.stats.min).c_str(),
              format_double(*report.winner_coefficient_error_sum).c_str(),
              dir.string().c_str());
  return finish_evolve(report);
}

// ---- audit ----

NamedScheme resolve_scheme(const std::string& spec) {
  if (auto named = named_scheme(spec)) return *named;
  return load_scheme(spec);
}

int run_audit(const std::string& spec, int order, const std::string& out_file) {
  const NamedScheme scheme = resolve_scheme(spec);
  std::vector<ResidualRow> rows;
  if (std::holds_alternative<ButcherTableau>(scheme)) {
    rows = condition_report(std::get<ButcherTableau>(scheme), order);
  } else if (std::holds_alternative<StencilScheme>(scheme)) {
    rows = moment_report(std::get<StencilScheme>(scheme), order);
  } else {
    rows = ab_moment_report(std::get<MultistepScheme>(scheme), order);
  }
  const std::string csv = residual_report_csv(rows);
  std::fputs(csv.c_str(), stdout);
  if (!out_file.empty()) write_text(csv, out_file);
  return kExitOk;
}

// ---- validate ----

int run_validate(const std::vector<std::string>& specs, const std::string& reference_name,
                 std::optional<double> location_flag, const StepLadder& ladder,
                 const std::string& out_root) {
  SweepReference reference;
  if (reference_name == "ivp") {
    reference = linear_ivp();
  } else if (auto pair = find_target(reference_name)) {
    reference = *pair;
  } else {
    throw std::invalid_argument("unknown reference '" + reference_name + "'");
  }
  const double location = location_flag.value_or(default_location(reference));

  std::vector<SweepScheme> schemes;
  std::vector<std::string> names;
  for (const auto& spec : specs) {
    const NamedScheme scheme = resolve_scheme(spec);
    std::string name = fs::path(spec).stem().string();
    if (std::holds_alternative<StencilScheme>(scheme)) {
      schemes.emplace_back(std::get<StencilScheme>(scheme));
    } else if (std::holds_alternative<ButcherTableau>(scheme)) {
      schemes.emplace_back(std::get<ButcherTableau>(scheme));
    } else {
      const auto& ms = std::get<MultistepScheme>(scheme);
      schemes.emplace_back(MultistepWithStarter{ms, rk_starter(ms.step_count())});
    }
    names.push_back(name);
  }

  const ComparisonReport report = compare_schemes(schemes, names, reference, location, ladder);

  json estimates;
  for (const auto& s : report.sweeps) {
    if (const auto est = estimate_order(s)) {
      estimates[s.scheme_name] = {{"slope", est->slope},
                                  {"r_squared", est->r_squared},
                                  {"points_used", est->points_used},
                                  {"floor_excluded", est->floor_excluded}};
      std::printf("%-20s slope %.3f (r^2 %.4f, %d points)\n", s.scheme_name.c_str(),
                  est->slope, est->r_squared, est->points_used);
    } else {
      estimates[s.scheme_name] = "indeterminate";
      std::printf("%-20s slope indeterminate\n", s.scheme_name.c_str());
    }
  }

  const fs::path dir = make_output_dir(out_root, "validate-" + reference_name);
  write_text(comparison_csv(report), dir / "comparison.csv");
  save_json(estimates, dir / "order_estimates.json");
  std::printf("artifacts in %s\n", dir.string().c_str());
  return kExitOk;
}

// ---- sensitivity ----

int run_sensitivity(const std::string& axis_name, const std::vector<double>& grid,
                    const FdFlags& flags) {
  SensitivityAxis axis;
  if (axis_name == "training_points") {
    axis = SensitivityAxis::training_points;
  } else if (axis_name == "population_size") {
    axis = SensitivityAxis::population_size;
  } else if (axis_name == "step_size") {
    axis = SensitivityAxis::step_size;
  } else {
    throw std::invalid_argument("unknown sensitivity axis '" + axis_name + "'");
  }

  FdEvolveConfig base;
  if (flags.kind == "central") {
    base.tmpl = StencilTemplate::central(flags.order, false);
  } else if (flags.kind == "forward") {
    base.tmpl = StencilTemplate::forward(flags.order);
  } else {
    throw std::invalid_argument("sensitivity supports central and forward templates");
  }
  base.target_name = flags.target;
  base.training_points = flags.points;
  base.de = flags.common.de;
  base.runs = flags.common.runs;
  base.threads = flags.common.threads;

  const auto points = sensitivity_sweep(axis, grid, base);

  std::string csv = "grid_value,winner_fitness,winner_error_sum,winner_point_evaluations\n";
  for (const auto& p : points) {
    csv += format_double(p.grid_value) + ',' + format_double(p.winner_fitness) + ',' +
           format_double(p.winner_error_sum) + ',' +
           std::to_string(p.winner_point_evaluations) + '\n';
  }
  const fs::path dir = make_output_dir(flags.common.out_root, "sensitivity-" + axis_name);
  write_text(csv, dir / "sensitivity.csv");
  std::fputs(csv.c_str(), stdout);
  std::printf("artifacts in %s\n", dir.string().c_str());
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"evoscheme: evolve and verify numerical scheme coefficients"};
  app.require_subcommand(1);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "search scheme coefficients with DE");
  evolve->require_subcommand(1);

  FdFlags fd_flags;
  auto* evolve_fd_cmd = evolve->add_subcommand("fd", "finite-difference stencil coefficients");
  evolve_fd_cmd->add_option("--kind", fd_flags.kind,
                            "central | central+center | forward | custom")
      ->capture_default_str();
  evolve_fd_cmd->add_option("--order", fd_flags.order, "accuracy order aimed for")
      ->capture_default_str();
  evolve_fd_cmd->add_option("--offsets", fd_flags.offsets, "offsets for --kind custom")
      ->delimiter(',');
  evolve_fd_cmd->add_option("--target", fd_flags.target, "training target pair")
      ->capture_default_str();
  evolve_fd_cmd->add_option("--points", fd_flags.points, "number of training points N")
      ->capture_default_str();
  add_de_flags(evolve_fd_cmd, fd_flags.common, default_fd_settings(), 10);

  RkFlags rk_flags;
  auto* evolve_rk_cmd = evolve->add_subcommand("rk", "Runge-Kutta tableau coefficients");
  evolve_rk_cmd->add_option("--stages", rk_flags.stages, "stage count s")->capture_default_str();
  evolve_rk_cmd->add_option("--order", rk_flags.order, "target accuracy order")
      ->capture_default_str();
  evolve_rk_cmd->add_flag("--full-budget", rk_flags.full_budget,
                          "long campaign budget for order 5 (stall 10000 / max 100000)");
  add_de_flags(evolve_rk_cmd, rk_flags.common, default_rk_settings(3), 100);

  AbFlags ab_flags;
  auto* evolve_ab_cmd = evolve->add_subcommand("ab", "Adams-Bashforth coefficients");
  evolve_ab_cmd->add_option("--steps", ab_flags.steps, "step count k")->capture_default_str();
  evolve_ab_cmd->add_option("--target", ab_flags.target, "training target pair")
      ->capture_default_str();
  evolve_ab_cmd->add_option("--points", ab_flags.points, "number of training points N")
      ->capture_default_str();
  add_de_flags(evolve_ab_cmd, ab_flags.common, default_ab_settings(), 10);

  // audit
  std::string audit_spec, audit_out;
  int audit_order = 4;
  auto* audit_cmd = app.add_subcommand("audit", "order-condition / moment residual report");
  audit_cmd->add_option("scheme", audit_spec, "scheme JSON file or builtin name")->required();
  audit_cmd->add_option("--order", audit_order, "order to audit against")->required();
  audit_cmd->add_option("--out", audit_out, "also write the report CSV here");

  // validate
  std::vector<std::string> validate_specs;
  std::string validate_reference = "ivp";
  std::optional<double> validate_location;
  StepLadder ladder;
  std::string validate_out;
  auto* validate_cmd = app.add_subcommand("validate", "step-size convergence sweeps");
  validate_cmd->add_option("schemes", validate_specs, "scheme files or builtin names")
      ->required();
  validate_cmd->add_option("--reference", validate_reference, "bell | exp | ivp")
      ->capture_default_str();
  double location_value = 0.0;
  auto* loc_opt = validate_cmd->add_option("--location", location_value,
                                           "evaluation abscissa (default per reference)");
  validate_cmd->add_option("--h0", ladder.h0, "largest step size")->capture_default_str();
  validate_cmd->add_option("--ratio", ladder.ratio, "step shrink factor")->capture_default_str();
  validate_cmd->add_option("--rungs", ladder.rungs, "ladder length")->capture_default_str();
  validate_cmd->add_option("--out", validate_out, "output root");

  // sensitivity
  FdFlags sens_flags;
  sens_flags.kind = "central";
  sens_flags.order = 6;
  sens_flags.points = 200;
  std::string sens_axis;
  std::vector<double> sens_grid;
  auto* sens_cmd = app.add_subcommand("sensitivity", "evolution sensitivity sweeps");
  sens_cmd->add_option("--axis", sens_axis, "training_points | population_size | step_size")
      ->required();
  sens_cmd->add_option("--grid", sens_grid, "grid values")->required()->delimiter(',');
  sens_cmd->add_option("--kind", sens_flags.kind, "central | forward")->capture_default_str();
  sens_cmd->add_option("--order", sens_flags.order, "stencil order")->capture_default_str();
  sens_cmd->add_option("--target", sens_flags.target, "training target pair")
      ->capture_default_str();
  sens_cmd->add_option("--points", sens_flags.points, "base number of training points")
      ->capture_default_str();
  add_de_flags(sens_cmd, sens_flags.common, default_fd_settings(), 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (evolve_fd_cmd->parsed()) return run_evolve_fd(fd_flags);
    if (evolve_rk_cmd->parsed()) {
      const bool budget_set = evolve_rk_cmd->count("--stall") > 0 ||
                              evolve_rk_cmd->count("--max-gens") > 0;
      return run_evolve_rk(rk_flags, budget_set);
    }
    if (evolve_ab_cmd->parsed()) return run_evolve_ab(ab_flags);
    if (audit_cmd->parsed()) return run_audit(audit_spec, audit_order, audit_out);
    if (validate_cmd->parsed()) {
      if (loc_opt->count() > 0) validate_location = location_value;
      return run_validate(validate_specs, validate_reference, validate_location, ladder,
                          validate_out);
    }
    if (sens_cmd->parsed()) return run_sensitivity(sens_axis, sens_grid, sens_flags);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
  return kExitConfigError;
}
