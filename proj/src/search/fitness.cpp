#include "qse/search/fitness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace qse {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> parallel_map(const std::vector<Genome>& genomes, const std::function<double(const Genome&)>& fn,
                                 int threads) {
  std::vector<double> out(genomes.size(), 0.0);
  parallel_for(genomes.size(), [&](std::size_t i) { out[i] = fn(genomes[i]); }, threads);
  return out;
}

std::optional<SimulationResult> try_simulate(const GenomeSpace& space, const Genome& g, int truncation,
                                             const SimOptions& options) {
  try {
    return simulate(decode(space, g), truncation, options);
  } catch (const TruncationError&) {
  } catch (const HeraldImprobableError&) {
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

BankSet::BankSet(TargetGrid grid, std::filesystem::path cache_dir)
    : grid_(std::move(grid)), cache_dir_(std::move(cache_dir)) {}

std::shared_ptr<const TargetBank> BankSet::at(int truncation) {
  std::lock_guard lock(mutex_);
  auto it = banks_.find(truncation);
  if (it != banks_.end()) return it->second;
  auto bank = cache_dir_.empty() ? std::make_shared<const TargetBank>(grid_, truncation)
                                 : cached_bank(grid_, truncation, cache_dir_);
  banks_.emplace(truncation, bank);
  return bank;
}

double grid_fitness(const GenomeSpace& space, const Genome& g, const TargetBank& bank, const SimOptions& options) {
  const auto sim = try_simulate(space, g, bank.truncation(), options);
  return sim ? bank.best(sim->state).fidelity : 0.0;
}

AdaptiveResult stage3_adaptive_fitness(const GenomeSpace& space, const Genome& g, BankSet& banks, int max_truncation,
                                       const SimOptions& options, double tolerance) {
  if (max_truncation < kAdaptiveStartTruncation) throw DomainError("max truncation must be at least 20");
  AdaptiveResult r;
  std::optional<SimulationResult> last;
  std::optional<double> previous;
  for (int t = kAdaptiveStartTruncation;; t = std::min(t + kAdaptiveStep, max_truncation)) {
    auto sim = try_simulate(space, g, t, options);
    r.truncation = t;
    // A leak at low truncation is not final; larger truncations may hold the state.
    if (sim) {
      const double n = mean_photon_number(sim->state);
      last = std::move(sim);
      r.mean_photons = n;
      if (previous && std::abs(n - *previous) <= tolerance * std::max(std::abs(*previous), 1e-12)) {
        r.converged = true;
        break;
      }
      previous = n;
    } else {
      last.reset();
      previous.reset();
    }
    if (t == max_truncation) break;
  }
  if (!last) return r;
  const GridMatch m = banks.at(r.truncation)->best(last->state);
  r.fitness = m.fidelity;
  r.match = m;
  return r;
}

SurrogateScore surrogate_fitness(const GenomeSpace& space, const Genome& g, const MlpModel& model, int truncation,
                                 const SimOptions& options) {
  SurrogateScore s;
  const auto sim = try_simulate(space, g, truncation, options);
  if (!sim) return s;
  s.probabilities = forward(model, number_distribution(sim->state));
  s.herald_probability = sim->herald_probability;
  return s;
}

}  // namespace qse
