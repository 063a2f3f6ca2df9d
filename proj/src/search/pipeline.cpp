#include "qse/search/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <json.hpp>

#include "qse/fock/measure.hpp"

namespace qse {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Independent stream per (stage, target) so a resumed run matches a fresh one.
std::mt19937_64 stage_rng(std::uint64_t seed, int stage, int target) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stage), static_cast<std::uint32_t>(target)};
  return std::mt19937_64(seq);
}

SimOptions strict_options(const GaConfig& cfg) { return {cfg.max_leak, cfg.p_min}; }
SimOptions stage1_options(const GaConfig& cfg) { return {cfg.stage1_max_leak, cfg.p_min}; }

std::vector<Genome> genomes_of(const std::vector<ReportEntry>& entries) {
  std::vector<Genome> out;
  for (const auto& e : entries) out.push_back(e.genome);
  return out;
}

const StageReport* find_report(const std::vector<StageReport>& reports, int stage, const std::string& category) {
  for (const auto& r : reports) {
    if (r.stage == stage && r.category == category) return &r;
  }
  return nullptr;
}

ReportEntry entry_for(const GenomeSpace& space, const ScoredGenome& s, std::string match = {}) {
  return {s.genome, s.fitness, decode(space, s.genome).describe(), std::move(match)};
}

// Config key plus every family or grid override.
std::string run_key(const GaConfig& cfg, const PipelineOptions& options) {
  nlohmann::json j = nlohmann::json::parse(cfg.key());
  for (const auto& [kind, spec] : options.grids) j["grids"][to_string(kind)] = spec.key();
  for (const auto& [kind, f] : options.families) {
    j["families"][to_string(kind)] = {f.min_alpha, f.max_alpha, f.max_squeezing, double(f.min_n), double(f.max_n),
                                      f.min_delta, f.max_delta, f.max_gamma, f.min_cubic_z, f.max_cubic_z};
  }
  return j.dump();
}

}  // namespace

void GaConfig::validate() const {
  space.validate();
  if (stage1_count < 0) throw ConfigError("stage1_count must be non-negative");
  if (stage2_population < 1 || stage3_population < 1) throw ConfigError("populations must be at least 1");
  if (stage1_truncation < 1 || stage2_truncation < 1) throw ConfigError("truncations must be positive");
  if (max_truncation < kAdaptiveStartTruncation) throw ConfigError("max_truncation must be at least 20");
  if (!(max_leak > 0.0) || !(stage1_max_leak > 0.0)) throw ConfigError("leak budgets must be positive");
  if (p_min < 0.0) throw ConfigError("p_min must be non-negative");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (report_best < 1) throw ConfigError("report_best must be at least 1");
  stage_params(stage2_generations).validate();
  stage_params(stage3_generations).validate();
}

GaStageParams GaConfig::stage_params(int generations) const {
  return {generations, elite, crossover_fraction, tournament, power};
}

std::string GaConfig::key() const {
  std::vector<int> arms, inputs, ops;
  for (auto a : space.arms) arms.push_back(static_cast<int>(a));
  for (auto k : space.single_mode_inputs) inputs.push_back(static_cast<int>(k));
  for (auto k : space.operators) ops.push_back(static_cast<int>(k));
  const nlohmann::json j = {{"stage1_count", stage1_count},     {"stage2_population", stage2_population},
                            {"stage3_population", stage3_population},
                            {"stage2_generations", stage2_generations},
                            {"stage3_generations", stage3_generations},
                            {"elite", elite},
                            {"crossover_fraction", crossover_fraction},
                            {"tournament", tournament},
                            {"power", power},
                            {"truncations", {stage1_truncation, stage2_truncation, max_truncation}},
                            {"stage1_max_leak", stage1_max_leak},
                            {"max_leak", max_leak},
                            {"p_min", p_min},
                            {"seed", seed},
                            {"report_best", report_best},
                            {"space", {{"slots", space.slots}, {"arms", arms}, {"inputs", inputs}, {"operators", ops},
                                       {"max_fock", space.max_fock}, {"max_herald", space.max_herald}}}};
  return j.dump();
}

Stage1Screen stage1_screen(long count, const MlpModel& model, const GaConfig& cfg, std::mt19937_64& rng) {
  Stage1Screen screen;
  for (long i = 0; i < count; ++i) screen.genomes.push_back(random_genome(cfg.space, rng));
  screen.scores.resize(screen.genomes.size());
  const SimOptions opts = stage1_options(cfg);
  parallel_for(
      screen.genomes.size(),
      [&](std::size_t i) {
        screen.scores[i] = surrogate_fitness(cfg.space, screen.genomes[i], model, cfg.stage1_truncation, opts);
      },
      cfg.threads);
  screen.evaluations = count;
  return screen;
}

std::vector<ScoredGenome> stage1_select(const Stage1Screen& screen, StateCategory category, std::size_t keep) {
  std::vector<std::size_t> order(screen.genomes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = screen.scores[a].score(category), sb = screen.scores[b].score(category);
    if (sa != sb) return sa > sb;
    return screen.scores[a].herald_probability > screen.scores[b].herald_probability;
  });
  std::vector<ScoredGenome> out;
  for (std::size_t i = 0; i < std::min(keep, order.size()); ++i)
    out.push_back({screen.genomes[order[i]], screen.scores[order[i]].score(category)});
  return out;
}

std::vector<ScoredGenome> stage1_seed(long count, const MlpModel& model, StateCategory category, const GaConfig& cfg,
                                      std::mt19937_64& rng) {
  const auto screen = stage1_screen(count, model, cfg, rng);
  return stage1_select(screen, category, static_cast<std::size_t>(cfg.stage2_population));
}

std::vector<StageReport> run_pipeline(const GaConfig& cfg, const PipelineOptions& options, const MlpModel* model) {
  cfg.validate();
  if (options.use_surrogate && model == nullptr) throw ConfigError("surrogate screening needs a trained model");
  if (options.targets.empty()) throw ConfigError("no target categories requested");

  const std::string key = run_key(cfg, options);
  std::vector<StageReport> previous;
  if (!options.report_path.empty() && std::filesystem::exists(options.report_path)) {
    for (auto& r : read_reports(options.report_path)) {
      if (r.config_key == key && r.surrogate == options.use_surrogate) previous.push_back(std::move(r));
    }
  }

  std::vector<StageReport> reports;
  auto emit = [&](StageReport r, bool fresh) {
    if (fresh && !options.report_path.empty()) append_report(options.report_path, r);
    if (options.on_report) options.on_report(r);
    reports.push_back(std::move(r));
  };
  auto base_report = [&](int stage, TargetKind kind) {
    StageReport r;
    r.stage = stage;
    r.category = to_string(kind);
    r.seed = cfg.seed;
    r.surrogate = options.use_surrogate;
    r.config_key = key;
    return r;
  };
  auto grid_for = [&](TargetKind kind) {
    const auto g = options.grids.find(kind);
    const auto f = options.families.find(kind);
    return TargetGrid::build(f != options.families.end() ? f->second : TargetFamily::search(kind),
                             g != options.grids.end() ? g->second : GridSpec::defaults(kind));
  };
  const auto keep2 = static_cast<std::size_t>(cfg.stage2_population);

  // Stage 1: one screen shared by every target.
  std::map<TargetKind, std::vector<Genome>> seeds;
  bool all_cached = true;
  for (TargetKind k : options.targets) all_cached = all_cached && find_report(previous, 1, to_string(k));
  if (all_cached) {
    for (TargetKind k : options.targets) {
      const StageReport* r = find_report(previous, 1, to_string(k));
      seeds[k] = genomes_of(r->best);
      emit(*r, false);
    }
  } else {
    const auto start = Clock::now();
    std::mt19937_64 rng = stage_rng(cfg.seed, 1, 0);
    if (options.use_surrogate) {
      const Stage1Screen screen = stage1_screen(cfg.stage1_count, *model, cfg, rng);
      const double elapsed = seconds_since(start);
      for (TargetKind k : options.targets) {
        StageReport r = base_report(1, k);
        r.truncations = {cfg.stage1_truncation};
        r.evaluations = screen.evaluations;
        r.wall_time_s = elapsed;
        for (const auto& s : stage1_select(screen, category_of(k), keep2)) r.best.push_back(entry_for(cfg.space, s));
        if (!r.best.empty()) r.generation_best = {r.best.front().fitness};
        seeds[k] = genomes_of(r.best);
        emit(std::move(r), true);
      }
    } else {
      std::vector<Genome> genomes;
      for (long i = 0; i < cfg.stage1_count; ++i) genomes.push_back(random_genome(cfg.space, rng));
      for (TargetKind k : options.targets) {
        const auto t0 = Clock::now();
        const TargetBank bank(grid_for(k), cfg.stage1_truncation);
        const auto fit = parallel_map(
            genomes, [&](const Genome& g) { return grid_fitness(cfg.space, g, bank, stage1_options(cfg)); },
            cfg.threads);
        StageReport r = base_report(1, k);
        r.truncations = {cfg.stage1_truncation};
        r.evaluations = cfg.stage1_count;
        r.wall_time_s = seconds_since(t0);
        const auto order = rank_descending(fit);
        for (std::size_t i = 0; i < std::min(keep2, order.size()); ++i)
          r.best.push_back(entry_for(cfg.space, {genomes[order[i]], fit[order[i]]}));
        if (!r.best.empty()) r.generation_best = {r.best.front().fitness};
        seeds[k] = genomes_of(r.best);
        emit(std::move(r), true);
      }
    }
  }

  for (TargetKind k : options.targets) {
    const std::string name = to_string(k);
    BankSet banks(grid_for(k), options.bank_cache_dir);
    const SimOptions strict = strict_options(cfg);

    // Stage 2: grid fidelity at a fixed medium truncation.
    std::vector<Genome> stage3_seed;
    if (const StageReport* cached = find_report(previous, 2, name)) {
      stage3_seed = genomes_of(cached->best);
      emit(*cached, false);
    } else {
      std::vector<Genome> initial = seeds[k];
      std::mt19937_64 rng = stage_rng(cfg.seed, 2, static_cast<int>(k));
      while (initial.size() < keep2) initial.push_back(random_genome(cfg.space, rng));
      const auto start = Clock::now();
      const auto bank = banks.at(cfg.stage2_truncation);
      const PopulationFitness fitness = [&](const std::vector<Genome>& pop) {
        return parallel_map(pop, [&](const Genome& g) { return grid_fitness(cfg.space, g, *bank, strict); },
                            cfg.threads);
      };
      GaOutcome out = run_ga_stage(cfg.space, std::move(initial), fitness, cfg.stage_params(cfg.stage2_generations), rng);
      StageReport r = base_report(2, k);
      r.truncations = {cfg.stage2_truncation};
      r.evaluations = out.evaluations;
      r.generation_best = out.generation_best;
      const std::size_t keep3 = std::min<std::size_t>(static_cast<std::size_t>(cfg.stage3_population), out.population.size());
      for (std::size_t i = 0; i < keep3; ++i) {
        const auto& s = out.population[i];
        std::string match;
        if (i < static_cast<std::size_t>(cfg.report_best)) {
          if (const auto sim = try_simulate(cfg.space, s.genome, cfg.stage2_truncation, strict))
            match = bank->best(sim->state).params.describe(k);
        }
        r.best.push_back(entry_for(cfg.space, s, match));
      }
      r.wall_time_s = seconds_since(start);
      stage3_seed = genomes_of(r.best);
      emit(std::move(r), true);
    }

    // Stage 3: adaptive truncation.
    if (const StageReport* cached = find_report(previous, 3, name)) {
      emit(*cached, false);
      continue;
    }
    std::mt19937_64 rng = stage_rng(cfg.seed, 3, static_cast<int>(k));
    while (stage3_seed.size() < static_cast<std::size_t>(cfg.stage3_population))
      stage3_seed.push_back(random_genome(cfg.space, rng));
    const auto start = Clock::now();
    const PopulationFitness fitness = [&](const std::vector<Genome>& pop) {
      return parallel_map(
          pop,
          [&](const Genome& g) {
            return stage3_adaptive_fitness(cfg.space, g, banks, cfg.max_truncation, strict).fitness;
          },
          cfg.threads);
    };
    GaOutcome out = run_ga_stage(cfg.space, std::move(stage3_seed), fitness, cfg.stage_params(cfg.stage3_generations), rng);
    StageReport r = base_report(3, k);
    r.evaluations = out.evaluations;
    r.generation_best = out.generation_best;
    std::vector<int> truncs;
    for (std::size_t i = 0; i < std::min<std::size_t>(static_cast<std::size_t>(cfg.report_best), out.population.size()); ++i) {
      const auto& s = out.population[i];
      const AdaptiveResult a = stage3_adaptive_fitness(cfg.space, s.genome, banks, cfg.max_truncation, strict);
      truncs.push_back(a.truncation);
      r.best.push_back(entry_for(cfg.space, s, a.match ? a.match->params.describe(k) : std::string{}));
      if (i == 0 && a.match) {
        const auto sim = try_simulate(cfg.space, s.genome, a.truncation, strict);
        const auto& grid = banks.grid();
        const GridMatch refined = polish_match(sim->state, grid.family, *a.match, grid.spec);
        r.refined_fidelity = refined.fidelity;
        r.refined_match = refined.params.describe(k);
      }
    }
    std::sort(truncs.begin(), truncs.end());
    truncs.erase(std::unique(truncs.begin(), truncs.end()), truncs.end());
    r.truncations = truncs;
    r.wall_time_s = seconds_since(start);
    emit(std::move(r), true);
  }
  return reports;
}

}  // namespace qse
