#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <json.hpp>

#include "qse/classifier/confusion.hpp"
#include "qse/cli/state_io.hpp"
#include "qse/cli/table1.hpp"

namespace qse::cli {
namespace {

using nlohmann::json;

std::filesystem::path in_out_dir(const Common& c, const std::filesystem::path& p, const char* fallback) {
  if (!p.empty()) return p;
  return c.out_dir / fallback;
}

void ensure_parent(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

void write_json(const std::filesystem::path& p, const json& j) {
  ensure_parent(p);
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

json confusion_json(const ConfusionMatrix& cm) {
  json rows = json::array();
  for (int r = 0; r < kNumCategories; ++r) {
    json row = json::array();
    for (int c = 0; c < kNumCategories; ++c) row.push_back(cm.counts(r, c));
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> category_names() {
  std::vector<std::string> v;
  for (int c = 0; c < kNumCategories; ++c) v.push_back(to_string(static_cast<StateCategory>(c)));
  return v;
}

}  // namespace

int verify_table(const Common&, const VerifyOptions& o) {
  if (o.truncation < 100) throw ConfigError("verify-table needs truncation >= 100");
  std::cout << std::left << std::setw(14) << "design" << std::right << std::setw(11) << "fidelity" << std::setw(11)
            << "reported" << std::setw(11) << "threshold" << std::setw(11) << "diff" << std::setw(13) << "herald p"
            << "  result\n";
  bool ok = true;
  for (const auto& d : published_designs()) {
    const DesignCheck c = check_design(d, o.truncation);
    ok = ok && c.passed;
    std::cout << std::left << std::setw(14) << c.name << std::right << std::fixed << std::setprecision(6)
              << std::setw(11) << c.fidelity << std::setw(11) << c.reported << std::setw(11) << c.threshold
              << std::showpos << std::setw(11) << c.fidelity - c.reported << std::noshowpos << std::scientific
              << std::setprecision(3) << std::setw(13) << c.herald_probability << "  " << (c.passed ? "PASS" : "FAIL");
    if (d.printed_target)
      std::cout << std::fixed << std::setprecision(6) << "  (printed " << d.printed_target->describe(d.kind)
                << ": " << c.printed_fidelity << ")";
    std::cout << std::defaultfloat << "\n";
  }
  return ok ? kOk : kThresholdFailure;
}

int train_classifier(const Common& common, TrainOptions o) {
  o.train.seed = common.seed;
  o.train.validate();
  if (o.sizes.train == 0 || o.sizes.test == 0) throw ConfigError("train and test sizes must be positive");
  const auto model_path = in_out_dir(common, o.model_path, "model.json");
  const auto metrics_path = in_out_dir(common, o.metrics_path, "metrics.json");

  const DatasetSplits data = synthesize_dataset(o.sizes, o.truncation, common.seed);
  std::mt19937_64 rng(common.seed);
  MlpModel model = MlpModel::initialized(MlpModel::default_dims(o.truncation + 1), Activation::Relu, rng);
  const long report_every = std::max(1L, o.train.epochs / 10);
  TrainResult result = train(std::move(model), data.train, o.train, [&](long pass, double loss) {
    if ((pass + 1) % report_every == 0) std::cerr << "pass " << pass + 1 << " loss " << loss << "\n";
  });
  const Evaluation test = evaluate(result.model, data.test);
  const Evaluation train_eval = evaluate(result.model, data.train);
  result.model.metadata().test_accuracy = test.accuracy;
  result.model.metadata().train_accuracy = train_eval.accuracy;
  ensure_parent(model_path);
  result.model.save(model_path);

  write_json(metrics_path, {{"schema", 1},
                            {"seed", common.seed},
                            {"test_accuracy", test.accuracy},
                            {"train_accuracy", train_eval.accuracy},
                            {"steps", result.steps},
                            {"final_loss", result.loss_curve.empty() ? 0.0 : result.loss_curve.back()},
                            {"categories", category_names()},
                            {"confusion", confusion_json(test.cm)},
                            {"config", common.config_text}});

  std::cout << "test accuracy " << test.accuracy << " (train " << train_eval.accuracy << ")\n"
            << test.cm.format() << "model: " << model_path.string() << "\nmetrics: " << metrics_path.string()
            << "\n";
  if (o.min_accuracy > 0.0 && test.accuracy < o.min_accuracy) {
    std::cout << "FAIL: accuracy below " << o.min_accuracy << "\n";
    return kThresholdFailure;
  }
  return kOk;
}

int classify(const Common&, const ClassifyOptions& o) {
  const MlpModel model = MlpModel::load(o.model_path);
  SingleModeState state;
  if (!o.state_path.empty()) {
    state = load_state(o.state_path);
  } else {
    Experiment e;
    if (!o.genome_path.empty()) {
      e = decode(GenomeSpace{}, load_genome(o.genome_path));
    } else {
      const auto& designs = published_designs();
      const auto it = std::find_if(designs.begin(), designs.end(), [&](const auto& d) { return d.name == o.design; });
      if (it == designs.end()) throw ConfigError("unknown design '" + o.design + "'");
      e = it->experiment;
    }
    const SimulationResult sim = simulate(e, o.truncation);
    state = sim.state;
    std::cout << "experiment: " << e.describe() << "\nherald probability: " << sim.herald_probability << "\n";
  }
  const Eigen::VectorXd p = forward(model, number_distribution(state));
  Eigen::Index best = 0;
  p.maxCoeff(&best);
  for (int c = 0; c < kNumCategories; ++c)
    std::cout << std::left << std::setw(14) << to_string(static_cast<StateCategory>(c)) << std::fixed
              << std::setprecision(6) << p(c) << "\n";
  std::cout << "argmax: " << to_string(static_cast<StateCategory>(best)) << "\n";
  return kOk;
}

int search(const Common& common, SearchOptions o) {
  o.ga.seed = common.seed;
  o.ga.threads = common.threads;
  o.ga.validate();
  PipelineOptions p;
  p.targets.clear();
  for (const auto& name : o.targets) {
    const auto k = parse_target_kind(name);
    if (!k) throw ConfigError("unknown target '" + name + "'");
    p.targets.push_back(*k);
    TargetFamily f = TargetFamily::search(*k);
    f.min_alpha = o.min_alpha;
    f.min_delta = o.min_delta;
    if (f.min_alpha < 0.0 || f.min_alpha > f.max_alpha) throw ConfigError("min-alpha must lie in [0, 2]");
    if (f.min_delta < 0.0 || f.min_delta > f.max_delta) throw ConfigError("min-delta must lie in [0, 1]");
    if (o.min_alpha > 0.0 || o.min_delta > 0.0) p.families[*k] = f;
  }
  p.use_surrogate = !o.no_surrogate;
  std::optional<MlpModel> model;
  if (p.use_surrogate) {
    if (o.model_path.empty()) throw ConfigError("search needs --model or --no-surrogate");
    if (!std::filesystem::exists(o.model_path)) throw ConfigError("model file not found: " + o.model_path.string());
    model = MlpModel::load(o.model_path);
  }
  if (o.dry_run) {
    std::cout << "dry run: configuration valid, 0 evaluations\n";
    return kOk;
  }
  p.report_path = in_out_dir(common, o.report_path, "search.jsonl");
  p.bank_cache_dir = o.bank_cache;
  if (!p.bank_cache_dir.empty()) std::filesystem::create_directories(p.bank_cache_dir);
  p.on_report = [](const StageReport& r) {
    std::cerr << "stage " << r.stage << " " << r.category << ": best " << (r.best.empty() ? 0.0 : r.best[0].fitness)
              << ", " << r.evaluations << " evaluations, " << r.wall_time_s << " s\n";
  };
  const auto reports = run_pipeline(o.ga, p, model ? &*model : nullptr);

  json summary = {{"schema", 1}, {"seed", common.seed}, {"surrogate", p.use_surrogate},
                  {"config", common.config_text}, {"results", json::array()}};
  for (const auto& r : reports) {
    if (r.stage != 3 || r.best.empty()) continue;
    const auto& b = r.best.front();
    std::cout << r.category << ": fidelity " << b.fitness << " (refined " << r.refined_fidelity << " at "
              << r.refined_match << ")\n  " << b.experiment << "\n  genome " << genome_to_json(b.genome) << "\n";
    summary["results"].push_back({{"target", r.category},
                                  {"fidelity", b.fitness},
                                  {"refined_fidelity", r.refined_fidelity},
                                  {"refined_match", r.refined_match},
                                  {"grid_match", b.match},
                                  {"experiment", b.experiment},
                                  {"categorical", b.genome.categorical},
                                  {"continuous", b.genome.continuous}});
  }
  const auto summary_path = in_out_dir(common, o.summary_path, "best.json");
  write_json(summary_path, summary);
  std::cout << "reports: " << p.report_path.string() << "\nsummary: " << summary_path.string() << "\n";
  return kOk;
}

int synth_dataset(const Common& common, SynthOptions o) {
  const auto prefix = in_out_dir(common, o.prefix, "dataset");
  ensure_parent(prefix);
  const DatasetSplits d = synthesize_dataset(o.sizes, o.truncation, common.seed);
  const std::filesystem::path train_path = prefix.string() + ".train.bin";
  const std::filesystem::path test_path = prefix.string() + ".test.bin";
  d.train.save(train_path);
  d.test.save(test_path);
  auto counts = [](const LabeledDataset& s) {
    std::string out;
    const auto c = s.category_counts();
    for (int i = 0; i < kNumCategories; ++i)
      out += (i ? " " : "") + to_string(static_cast<StateCategory>(i)) + "=" + std::to_string(c[static_cast<std::size_t>(i)]);
    return out;
  };
  std::cout << "train " << d.train.size() << " (" << counts(d.train) << ") -> " << train_path.string() << "\n"
            << "test  " << d.test.size() << " (" << counts(d.test) << ") -> " << test_path.string() << "\n";
  return kOk;
}

int inspect_report(const Common&, const InspectOptions& o) {
  const auto reports = read_reports(o.report_path);
  for (const auto& r : reports) {
    std::cout << "stage " << r.stage << "  " << std::left << std::setw(13) << r.category << std::right
              << " seed " << r.seed << (r.surrogate ? "" : " (no surrogate)") << "  evaluations " << r.evaluations
              << "  " << std::fixed << std::setprecision(1) << r.wall_time_s << " s" << std::defaultfloat << "\n";
    if (!r.generation_best.empty()) {
      std::cout << "  best per generation:";
      for (double f : r.generation_best) std::cout << " " << std::fixed << std::setprecision(4) << f;
      std::cout << std::defaultfloat << "\n";
    }
    if (!r.best.empty()) {
      std::cout << "  top: " << r.best.front().fitness << "  " << r.best.front().experiment;
      if (!r.best.front().match.empty()) std::cout << "  [" << r.best.front().match << "]";
      std::cout << "\n";
    }
    if (r.refined_fidelity >= 0.0) std::cout << "  refined: " << r.refined_fidelity << " at " << r.refined_match << "\n";
  }
  std::cout << reports.size() << " reports\n";
  return kOk;
}

}  // namespace qse::cli
