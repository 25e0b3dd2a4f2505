#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evoscheme/rng.hpp"

namespace evoscheme {

/// Population member. Each individual carries its own control-parameter pair,
/// regenerated every generation around the averages of the successful ones.
struct Individual {
  std::vector<double> genome;
  double cr = 0.0;                  // crossover rate, in [0, 1]
  double f = 0.0;                   // scaling factor, in [0.1, 1]
  std::optional<double> fitness;    // unset until first evaluation
};

struct DeSettings {
  int population_size = 150;
  double cr0 = 0.25;
  double f0 = 0.6;
  double gamma = 0.1;               // Cauchy half-width for both CR and F
  int stall_generations = 250;      // stop after this many generations without improvement
  int max_generations = 2500;
  int reinjection_count = 5;
  std::uint64_t seed = 0;
};

enum class Termination { stalled, max_generations };

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double cr_avg = 0.0;
  double f_avg = 0.0;
  std::uint64_t point_evaluations = 0;
};

struct RunRecord {
  DeSettings settings;
  std::vector<GenerationStats> trace;
  Individual final_best;
  int generations_run = 0;
  Termination termination = Termination::max_generations;
  double wall_time_seconds = 0.0;
  std::uint64_t genome_evaluations = 0;
};

/// Candidate objective. NaN results are treated as +infinity so divergent
/// candidates lose selection instead of corrupting the run.
using FitnessFn = std::function<double(std::span<const double>)>;

struct ControlAverages {
  double cr = 0.0;
  double f = 0.0;
};

/// NP individuals with genomes uniform in [-1, 1] and cr/f at their initial
/// values; fitness unset. Rejects population_size < 4.
std::vector<Individual> initialize_population(const DeSettings& settings, int dimension, Rng& rng);

/// rand/1 mutant: X_r1 + f * (X_r2 - X_r3) with r1, r2, r3 and target_index
/// pairwise distinct. No clamping.
std::vector<double> mutate(std::size_t target_index, const std::vector<Individual>& population,
                           double f, Rng& rng);

/// Binomial crossover; a forced index drawn uniformly guarantees at least one
/// mutant component survives.
std::vector<double> crossover(std::span<const double> target, std::span<const double> mutant,
                              double cr, Rng& rng);

/// Greedy selection with ties favoring the trial. On success the target takes
/// the trial genome and fitness, keeping the (cr, f) pair that produced it.
/// Returns whether replacement happened.
bool select(Individual& target, std::vector<double>&& trial_genome, double trial_fitness);

/// Once per generation: move the averages to the means of the successful
/// individuals' (cr, f) when any selection succeeded, then regenerate every
/// individual's pair as a Cauchy perturbation of the averages, truncated to
/// [0, 1] and [0.1, 1].
ControlAverages adapt_control_parameters(std::span<const double> successful_cr,
                                         std::span<const double> successful_f,
                                         ControlAverages previous,
                                         std::vector<Individual>& population,
                                         double gamma, Rng& rng);

/// Replaces `count` distinct individuals, never the current best, with fresh
/// uniform genomes; their cr/f reset to the current averages and their
/// fitness is unset for re-evaluation.
void reinject(std::vector<Individual>& population, std::size_t best_index, int count,
              ControlAverages averages, Rng& rng);

/// Full evolution loop. `point_eval_counter`, when given, is sampled once per
/// generation into the trace (otherwise the genome-evaluation count is used).
RunRecord run(const DeSettings& settings, int dimension, const FitnessFn& fitness,
              const std::atomic<std::uint64_t>* point_eval_counter = nullptr);

} // namespace evoscheme
