#pragma once

#include <functional>
#include <random>
#include <vector>

#include "qse/search/genome.hpp"

namespace qse {

/// Fitness of a whole population, index-aligned with the input.
using PopulationFitness = std::function<std::vector<double>(const std::vector<Genome>&)>;

struct GaStageParams {
  int generations = 10;
  int elite = 10;
  double crossover_fraction = 0.3;
  int tournament = 8;
  double power = 10.0;

  /// Throws ConfigError.
  void validate() const;
};

struct ScoredGenome {
  Genome genome;
  double fitness = 0.0;
};

struct GaOutcome {
  /// Final population, best first (stable on ties).
  std::vector<ScoredGenome> population;
  /// Best fitness of the initial population and after every generation.
  std::vector<double> generation_best;
  long evaluations = 0;
};

/// Generational GA: the elite carry over unchanged, a crossover fraction of
/// the rest comes from tournament pairs, the remainder from tournament
/// winners under power mutation. Every generation evaluates the whole
/// population, so evaluations = population x (generations + 1).
GaOutcome run_ga_stage(const GenomeSpace& space, std::vector<Genome> initial, const PopulationFitness& fitness,
                       const GaStageParams& params, std::mt19937_64& rng);

/// Indices ordered by descending fitness, ties by lower index.
std::vector<std::size_t> rank_descending(const std::vector<double>& fitness);

}  // namespace qse
