#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qse/classifier/mlp.hpp"
#include "qse/search/fitness.hpp"
#include "qse/search/ga.hpp"
#include "qse/search/report.hpp"

namespace qse {

struct GaConfig {
  long stage1_count = 10000;
  int stage2_population = 500;
  int stage3_population = 200;
  int stage2_generations = 10;
  int stage3_generations = 10;
  int elite = 10;
  double crossover_fraction = 0.3;
  int tournament = 8;
  double power = 10.0;
  int stage1_truncation = 30;
  int stage2_truncation = 80;
  int max_truncation = 100;
  /// Looser leak budget for the low-truncation stage-1 screen.
  double stage1_max_leak = 1e-2;
  double max_leak = kDefaultMaxLeak;
  double p_min = kDefaultHeraldFloor;
  std::uint64_t seed = 1;
  int threads = 1;
  /// Genomes kept in the final stage-3 report.
  int report_best = 10;
  GenomeSpace space;

  /// Throws ConfigError.
  void validate() const;
  GaStageParams stage_params(int generations) const;
  /// Identifies every setting that affects results (threads excluded).
  std::string key() const;
};

/// Stage-1 screen of `count` random genomes drawn from rng.
struct Stage1Screen {
  std::vector<Genome> genomes;
  std::vector<SurrogateScore> scores;
  long evaluations = 0;
};

Stage1Screen stage1_screen(long count, const MlpModel& model, const GaConfig& cfg, std::mt19937_64& rng);

/// Top `keep` genomes for a category by surrogate score, herald probability
/// breaking ties, best first.
std::vector<ScoredGenome> stage1_select(const Stage1Screen& screen, StateCategory category, std::size_t keep);

/// Convenience: screen and select in one call.
std::vector<ScoredGenome> stage1_seed(long count, const MlpModel& model, StateCategory category, const GaConfig& cfg,
                                      std::mt19937_64& rng);

struct PipelineOptions {
  std::vector<TargetKind> targets = {TargetKind::Cat};
  /// Replaces surrogate screening by grid fidelity at the stage-1 truncation.
  bool use_surrogate = true;
  /// Appended JSON-lines reports; completed stages found here are reused.
  std::filesystem::path report_path;
  std::filesystem::path bank_cache_dir;
  /// Grid resolutions per family; defaults when absent.
  std::map<TargetKind, GridSpec> grids;
  /// Family ranges per target; TargetFamily::search when absent.
  std::map<TargetKind, TargetFamily> families;
  std::function<void(const StageReport&)> on_report;
};

/// Stage 1 (shared across targets), then stages 2 and 3 for each target.
/// Returns every report produced or reused, in order.
std::vector<StageReport> run_pipeline(const GaConfig& cfg, const PipelineOptions& options, const MlpModel* model);

}  // namespace qse
