#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "qse/classifier/mlp.hpp"
#include "qse/fock/experiment.hpp"
#include "qse/search/ga.hpp"
#include "qse/search/genome.hpp"
#include "qse/targets/grid.hpp"

namespace qse {

inline constexpr int kAdaptiveStartTruncation = 20;
inline constexpr int kAdaptiveStep = 20;
inline constexpr double kPhotonConvergenceTolerance = 1e-3;

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
/// exception after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads);

/// Evaluates fn on every genome with up to `threads` workers. Results are
/// index-aligned, so the output does not depend on scheduling.
std::vector<double> parallel_map(const std::vector<Genome>& genomes, const std::function<double(const Genome&)>& fn,
                                 int threads);

/// Simulation that maps every failure (leak, improbable herald) to nullopt.
std::optional<SimulationResult> try_simulate(const GenomeSpace& space, const Genome& g, int truncation,
                                             const SimOptions& options);

/// Target banks for one grid at any truncation, built on first use.
/// Safe to share across threads.
class BankSet {
 public:
  explicit BankSet(TargetGrid grid, std::filesystem::path cache_dir = {});
  std::shared_ptr<const TargetBank> at(int truncation);
  const TargetGrid& grid() const { return grid_; }

 private:
  TargetGrid grid_;
  std::filesystem::path cache_dir_;
  std::mutex mutex_;
  std::map<int, std::shared_ptr<const TargetBank>> banks_;
};

/// Best grid fidelity of the decoded experiment at the bank's truncation;
/// 0 when the simulation fails.
double grid_fitness(const GenomeSpace& space, const Genome& g, const TargetBank& bank, const SimOptions& options);

struct AdaptiveResult {
  double fitness = 0.0;
  int truncation = 0;  // last truncation simulated
  double mean_photons = 0.0;
  bool converged = false;
  std::optional<GridMatch> match;
};

/// Simulates at truncations 20, 40, ... up to max_truncation until the mean
/// photon number of the heralded state changes by less than `tolerance`
/// (relative) between successive truncations, then scores against the grid
/// at the final truncation. Failures map to fitness 0.
AdaptiveResult stage3_adaptive_fitness(const GenomeSpace& space, const Genome& g, BankSet& banks, int max_truncation,
                                       const SimOptions& options, double tolerance = kPhotonConvergenceTolerance);

/// Surrogate class probabilities of a genome's output, or nullopt on failure.
struct SurrogateScore {
  Eigen::VectorXd probabilities;  // empty on failure
  double herald_probability = 0.0;
  double score(StateCategory c) const {
    return probabilities.size() ? probabilities(static_cast<int>(c)) : 0.0;
  }
};

SurrogateScore surrogate_fitness(const GenomeSpace& space, const Genome& g, const MlpModel& model, int truncation,
                                 const SimOptions& options);

}  // namespace qse
