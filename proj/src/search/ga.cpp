#include "qse/search/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qse/search/ga_operators.hpp"

namespace qse {

void GaStageParams::validate() const {
  if (generations < 0) throw ConfigError("generations must be non-negative");
  if (elite < 0) throw ConfigError("elite count must be non-negative");
  if (crossover_fraction < 0.0 || crossover_fraction > 1.0) throw ConfigError("crossover fraction must be in [0, 1]");
  if (tournament < 1) throw ConfigError("tournament size must be at least 1");
  if (!(power >= 1.0)) throw ConfigError("mutation power must be at least 1");
}

std::vector<std::size_t> rank_descending(const std::vector<double>& fitness) {
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
  return order;
}

GaOutcome run_ga_stage(const GenomeSpace& space, std::vector<Genome> population, const PopulationFitness& fitness,
                       const GaStageParams& params, std::mt19937_64& rng) {
  params.validate();
  if (population.empty()) throw ShapeError("GA stage needs a non-empty initial population");
  const std::size_t size = population.size();
  const std::size_t elite = std::min<std::size_t>(static_cast<std::size_t>(params.elite), size);
  const auto crossovers = static_cast<std::size_t>(std::lround(params.crossover_fraction * double(size - elite)));

  GaOutcome out;
  std::vector<double> fit = fitness(population);
  out.evaluations += static_cast<long>(size);
  out.generation_best.push_back(*std::max_element(fit.begin(), fit.end()));

  for (int gen = 0; gen < params.generations; ++gen) {
    const auto order = rank_descending(fit);
    std::vector<Genome> next;
    next.reserve(size);
    for (std::size_t i = 0; i < elite; ++i) next.push_back(population[order[i]]);
    for (std::size_t i = 0; i < crossovers; ++i) {
      const auto& a = population[tournament_select(fit, params.tournament, rng)];
      const auto& b = population[tournament_select(fit, params.tournament, rng)];
      next.push_back(scattered_crossover(a, b, rng));
    }
    while (next.size() < size) {
      const auto& parent = population[tournament_select(fit, params.tournament, rng)];
      next.push_back(power_mutation(space, parent, params.power, rng));
    }
    population = std::move(next);
    fit = fitness(population);
    out.evaluations += static_cast<long>(size);
    out.generation_best.push_back(*std::max_element(fit.begin(), fit.end()));
  }

  for (std::size_t i : rank_descending(fit)) out.population.push_back({population[i], fit[i]});
  return out;
}

}  // namespace qse
