#include "evoscheme/de.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evoscheme {

namespace {

double guarded(const FitnessFn& fitness, std::span<const double> genome) {
  const double v = fitness(genome);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

void check_settings(const DeSettings& s) {
  if (s.population_size < 4) {
    throw std::invalid_argument("population_size must be >= 4 (three donors plus target)");
  }
  if (s.stall_generations < 1 || s.max_generations < 1) {
    throw std::invalid_argument("generation limits must be positive");
  }
  if (s.stall_generations > s.max_generations) {
    throw std::invalid_argument("stall_generations must not exceed max_generations");
  }
}

} // namespace

std::vector<Individual> initialize_population(const DeSettings& settings, int dimension, Rng& rng) {
  check_settings(settings);
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  std::vector<Individual> population(settings.population_size);
  for (auto& ind : population) {
    ind.genome.resize(dimension);
    for (auto& x : ind.genome) x = -1.0 + rng.uniform01() * 2.0;
    ind.cr = settings.cr0;
    ind.f = settings.f0;
    ind.fitness.reset();
  }
  return population;
}

std::vector<double> mutate(std::size_t target_index, const std::vector<Individual>& population,
                           double f, Rng& rng) {
  const std::size_t np = population.size();
  if (np < 4) throw std::invalid_argument("mutation needs a population of at least 4");
  std::size_t r1, r2, r3;
  do {
    r1 = rng.uniform_index(np);
  } while (r1 == target_index);
  do {
    r2 = rng.uniform_index(np);
  } while (r2 == target_index || r2 == r1);
  do {
    r3 = rng.uniform_index(np);
  } while (r3 == target_index || r3 == r1 || r3 == r2);

  const auto& x1 = population[r1].genome;
  const auto& x2 = population[r2].genome;
  const auto& x3 = population[r3].genome;
  std::vector<double> mutant(x1.size());
  for (std::size_t j = 0; j < mutant.size(); ++j) {
    mutant[j] = x1[j] + f * (x2[j] - x3[j]);
  }
  return mutant;
}

std::vector<double> crossover(std::span<const double> target, std::span<const double> mutant,
                              double cr, Rng& rng) {
  if (target.size() != mutant.size()) {
    throw std::invalid_argument("crossover requires equal-dimension target and mutant");
  }
  const std::size_t dim = target.size();
  const std::size_t j_rand = rng.uniform_index(dim);
  std::vector<double> trial(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    trial[j] = (rng.uniform01() <= cr || j == j_rand) ? mutant[j] : target[j];
  }
  return trial;
}

bool select(Individual& target, std::vector<double>&& trial_genome, double trial_fitness) {
  if (!target.fitness) {
    throw std::logic_error("selection target has no evaluated fitness");
  }
  if (trial_fitness <= *target.fitness) {
    target.genome = std::move(trial_genome);
    target.fitness = trial_fitness;
    return true;
  }
  return false;
}

ControlAverages adapt_control_parameters(std::span<const double> successful_cr,
                                         std::span<const double> successful_f,
                                         ControlAverages previous,
                                         std::vector<Individual>& population,
                                         double gamma, Rng& rng) {
  ControlAverages avg = previous;
  if (!successful_cr.empty()) {
    double cr_sum = 0.0, f_sum = 0.0;
    for (double v : successful_cr) cr_sum += v;
    for (double v : successful_f) f_sum += v;
    avg.cr = cr_sum / successful_cr.size();
    avg.f = f_sum / successful_f.size();
  }
  for (auto& ind : population) {
    ind.f = std::clamp(rng.cauchy(gamma) + avg.f, 0.1, 1.0);
    ind.cr = std::clamp(rng.cauchy(gamma) + avg.cr, 0.0, 1.0);
  }
  return avg;
}

void reinject(std::vector<Individual>& population, std::size_t best_index, int count,
              ControlAverages averages, Rng& rng) {
  const std::size_t np = population.size();
  if (count < 0 || static_cast<std::size_t>(count) >= np) {
    throw std::invalid_argument("reinjection count must be smaller than the population");
  }
  std::vector<bool> chosen(np, false);
  for (int n = 0; n < count; ++n) {
    std::size_t q;
    do {
      q = rng.uniform_index(np);
    } while (q == best_index || chosen[q]);
    chosen[q] = true;
    auto& ind = population[q];
    for (auto& x : ind.genome) x = -1.0 + rng.uniform01() * 2.0;
    ind.cr = averages.cr;
    ind.f = averages.f;
    ind.fitness.reset();
  }
}

RunRecord run(const DeSettings& settings, int dimension, const FitnessFn& fitness,
              const std::atomic<std::uint64_t>* point_eval_counter) {
  const auto t_start = std::chrono::steady_clock::now();

  if (settings.reinjection_count < 0 ||
      settings.reinjection_count >= settings.population_size) {
    throw std::invalid_argument("reinjection_count must be in [0, population_size)");
  }
  Rng rng(settings.seed);
  RunRecord record;
  record.settings = settings;

  std::vector<Individual> population = initialize_population(settings, dimension, rng);
  ControlAverages averages{settings.cr0, settings.f0};

  double best_value = std::numeric_limits<double>::infinity();
  Individual best_individual;
  int stall = 0;
  std::uint64_t evals = 0;

  std::vector<double> successful_cr, successful_f;
  successful_cr.reserve(population.size());
  successful_f.reserve(population.size());

  int generation = 0;
  while (generation < settings.max_generations) {
    ++generation;

    // evaluate individuals without a fitness (whole population in the first
    // generation, reinjected ones afterwards)
    for (auto& ind : population) {
      if (!ind.fitness) {
        ind.fitness = guarded(fitness, ind.genome);
        ++evals;
      }
    }

    // donors and targets come from the previous generation's population
    const std::vector<Individual> previous = population;
    successful_cr.clear();
    successful_f.clear();
    for (std::size_t i = 0; i < population.size(); ++i) {
      std::vector<double> mutant = mutate(i, previous, previous[i].f, rng);
      std::vector<double> trial = crossover(previous[i].genome, mutant, previous[i].cr, rng);
      const double trial_fitness = guarded(fitness, trial);
      ++evals;
      if (select(population[i], std::move(trial), trial_fitness)) {
        successful_cr.push_back(previous[i].cr);
        successful_f.push_back(previous[i].f);
      }
    }

    averages = adapt_control_parameters(successful_cr, successful_f, averages,
                                        population, settings.gamma, rng);

    std::size_t best_index = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
      if (*population[i].fitness < *population[best_index].fitness) best_index = i;
    }
    if (*population[best_index].fitness < best_value) {
      best_value = *population[best_index].fitness;
      best_individual = population[best_index];
      stall = 0;
    } else {
      ++stall;
    }

    record.trace.push_back({generation, best_value, averages.cr, averages.f,
                            point_eval_counter ? point_eval_counter->load() : evals});

    if (stall >= settings.stall_generations) {
      record.termination = Termination::stalled;
      break;
    }
    if (generation == settings.max_generations) {
      record.termination = Termination::max_generations;
      break;
    }

    reinject(population, best_index, settings.reinjection_count, averages, rng);
  }

  record.generations_run = generation;
  record.final_best = best_individual;
  record.genome_evaluations = evals;
  record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return record;
}

} // namespace evoscheme
