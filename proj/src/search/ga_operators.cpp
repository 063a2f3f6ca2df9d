#include "qse/search/ga_operators.hpp"

#include <cmath>

namespace qse {

double power_mutate_gene(double x, double power, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s = std::pow(u(rng), power);
  const double r = u(rng);
  return r < x ? x - s * x : x + s * (1.0 - x);
}

Genome power_mutation(const GenomeSpace& space, const Genome& g, double power, std::mt19937_64& rng) {
  if (!(power >= 1.0)) throw DomainError("mutation power must be at least 1");
  check_layout(space, g);
  Genome child = g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto card = space.cardinalities();
  for (std::size_t i = 0; i < card.size(); ++i) {
    const double p = std::pow(u(rng), power);
    if (u(rng) < p) child.categorical[i] = std::uniform_int_distribution<int>(0, card[i] - 1)(rng);
  }
  for (double& x : child.continuous) x = power_mutate_gene(x, power, rng);
  return child;
}

Genome scattered_crossover(const Genome& a, const Genome& b, std::mt19937_64& rng) {
  if (a.categorical.size() != b.categorical.size() || a.continuous.size() != b.continuous.size())
    throw ShapeError("crossover parents have different layouts");
  std::bernoulli_distribution coin(0.5);
  Genome child = a;
  for (std::size_t i = 0; i < a.categorical.size(); ++i) {
    if (coin(rng)) child.categorical[i] = b.categorical[i];
  }
  for (std::size_t i = 0; i < a.continuous.size(); ++i) {
    if (coin(rng)) child.continuous[i] = b.continuous[i];
  }
  return child;
}

std::size_t tournament_select(const std::vector<double>& fitness, int k, std::mt19937_64& rng) {
  if (fitness.empty()) throw ShapeError("tournament over an empty population");
  if (k < 1) throw DomainError("tournament size must be at least 1");
  std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
  std::size_t best = pick(rng);
  for (int i = 1; i < k; ++i) {
    const std::size_t c = pick(rng);
    if (fitness[c] > fitness[best] || (fitness[c] == fitness[best] && c < best)) best = c;
  }
  return best;
}

}  // namespace qse
