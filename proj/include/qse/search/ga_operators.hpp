#pragma once

#include <random>
#include <vector>

#include "qse/search/genome.hpp"

namespace qse {

/// Moves x in [0, 1] toward a boundary by s = u^power of the distance to it.
/// The lower boundary is chosen when an independent uniform draw falls
/// below x, which makes power = 1 an exact uniform resample.
double power_mutate_gene(double x, double power, std::mt19937_64& rng);

/// Power mutation of every continuous gene; each categorical gene is
/// resampled uniformly with probability u^power.
Genome power_mutation(const GenomeSpace& space, const Genome& g, double power, std::mt19937_64& rng);

/// Each gene copied from a or b with probability 1/2.
Genome scattered_crossover(const Genome& a, const Genome& b, std::mt19937_64& rng);

/// Index of the fittest of k entrants drawn with replacement; ties go to the
/// lower index.
std::size_t tournament_select(const std::vector<double>& fitness, int k, std::mt19937_64& rng);

}  // namespace qse
