#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace qse;

namespace {

std::vector<std::string> option_values(const CLI::Option* opt) {
  if (opt->count() > 0) return opt->reduced_results();
  std::string d = opt->get_default_str();
  if (d.empty()) return {};
  if (d.front() == '[' && d.back() == ']') {
    std::vector<std::string> out;
    for (auto& v : CLI::detail::split(d.substr(1, d.size() - 2), ',')) {
      CLI::detail::trim(v);
      if (!v.empty()) out.push_back(v);
    }
    return out;
  }
  return {d};
}

void dump_options(std::ostream& os, const CLI::App* app) {
  for (const CLI::Option* opt : app->get_options({})) {
    if (!opt->get_configurable() || opt == app->get_help_ptr() || opt == app->get_config_ptr()) continue;
    const std::string name = opt->get_single_name();
    if (opt->get_type_size() == 0) {
      if (opt->count() > 0) os << name << " = true\n";
      continue;
    }
    const auto values = option_values(opt);
    if (values.empty() || (values.size() == 1 && values[0].empty())) continue;
    if (opt->get_items_expected_max() > 1) {
      os << name << " = [";
      for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? ", " : "") << CLI::detail::convert_arg_for_ini(values[i]);
      os << "]\n";
    } else {
      os << name << " = " << CLI::detail::convert_arg_for_ini(values[0]) << "\n";
    }
  }
}

// Globals plus the selected subcommand, so the output loads back unchanged.
std::string effective_config(const CLI::App& app) {
  std::ostringstream os;
  dump_options(os, &app);
  for (const CLI::App* sub : app.get_subcommands()) {
    os << "\n[" << sub->get_name() << "]\n";
    dump_options(os, sub);
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum state engineering toolkit: simulate heralded two-mode experiments, train the state "
               "classifier and search for experiment designs."};
  app.set_config("--config", "", "TOML config file; keys mirror the long option names")
      ->check(CLI::ExistingFile);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  cli::Common common;
  bool dump_config = false;
  app.add_option("--out-dir", common.out_dir, "Directory for output files")->envname("QSE_OUT_DIR")
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads for fitness evaluation")->envname("QSE_THREADS")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
  app.add_flag("--dump-config", dump_config, "Print the effective configuration as TOML and exit")
      ->configurable(false);

  cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-table", "Simulate the five published designs and check fidelities");
  verify_cmd->add_option("--truncation", verify.truncation, "Fock truncation (>= 100)")->capture_default_str();

  cli::TrainOptions train;
  auto* train_cmd = app.add_subcommand("train-classifier", "Synthesize data, train and evaluate the classifier");
  train_cmd->add_option("--train-size", train.sizes.train, "Training states")->capture_default_str();
  train_cmd->add_option("--test-size", train.sizes.test, "Test states")->capture_default_str();
  train_cmd->add_option("--truncation", train.truncation, "Truncation of the input distributions")
      ->check(CLI::Range(10, 400))->capture_default_str();
  train_cmd->add_option("--epochs", train.train.epochs, "Full passes (or steps with --epochs-are-steps)")
      ->capture_default_str();
  train_cmd->add_flag("--epochs-are-steps", train.train.epochs_are_steps, "Count mini-batch steps, not passes");
  train_cmd->add_option("--batch-size", train.train.batch_size, "Mini-batch size")->capture_default_str();
  train_cmd->add_option("--learning-rate", train.train.adam.learning_rate, "Adam learning rate")->capture_default_str();
  train_cmd->add_option("--beta1", train.train.adam.beta1, "Adam first-moment decay")->capture_default_str();
  train_cmd->add_option("--beta2", train.train.adam.beta2, "Adam second-moment decay")->capture_default_str();
  train_cmd->add_option("--epsilon", train.train.adam.epsilon, "Adam epsilon")->capture_default_str();
  train_cmd->add_option("--dropout", train.train.dropout, "Hidden-layer dropout rate")->capture_default_str();
  train_cmd->add_option("--l2", train.train.l2, "L2 weight penalty")->capture_default_str();
  train_cmd->add_option("--model", train.model_path, "Model output (default <out-dir>/model.json)");
  train_cmd->add_option("--metrics", train.metrics_path, "Metrics output (default <out-dir>/metrics.json)");
  train_cmd->add_option("--min-accuracy", train.min_accuracy, "Exit 1 below this test accuracy (0 disables)")
      ->capture_default_str();

  cli::ClassifyOptions cls;
  auto* cls_cmd = app.add_subcommand("classify", "Category probabilities for a state, genome or published design");
  cls_cmd->add_option("--model", cls.model_path, "Trained model file")->required()->check(CLI::ExistingFile);
  auto* state_opt = cls_cmd->add_option("--state", cls.state_path, "State JSON file")->check(CLI::ExistingFile);
  auto* genome_opt = cls_cmd->add_option("--genome", cls.genome_path, "Genome JSON file")->check(CLI::ExistingFile);
  auto* design_opt = cls_cmd->add_option("--design", cls.design, "Published design name (cat, squeezed_cat, ...)");
  state_opt->excludes(genome_opt, design_opt);
  genome_opt->excludes(design_opt);
  cls_cmd->add_option("--truncation", cls.truncation, "Simulation truncation for genomes and designs")
      ->check(CLI::Range(1, 400))->capture_default_str();

  cli::SearchOptions srch;
  auto& ga = srch.ga;
  bool desk_scale = false, paper_scale = false;
  auto* s_cmd = app.add_subcommand("search", "Three-stage search for experiments producing target states");
  s_cmd->add_option("--target", srch.targets, "Targets: cat, squeezed_cat, zombie, on, cubic_phase")
      ->capture_default_str();
  s_cmd->add_option("--model", srch.model_path, "Trained classifier for stage 1");
  s_cmd->add_flag("--no-surrogate", srch.no_surrogate, "Screen stage 1 by grid fidelity instead of the classifier");
  s_cmd->add_flag("--dry-run", srch.dry_run, "Validate the configuration and stop")->configurable(false);
  auto* desk = s_cmd->add_flag("--desk-scale", desk_scale, "Populations 1e4 / 500 / 200 (the defaults)");
  auto* paper = s_cmd->add_flag("--paper-scale", paper_scale, "Populations 8e6 / 5e6 / 1e4");
  desk->excludes(paper);
  s_cmd->add_option("--stage1-count", ga.stage1_count, "Random genomes screened in stage 1")->capture_default_str();
  s_cmd->add_option("--stage2-population", ga.stage2_population, "Stage 2 population")->capture_default_str();
  s_cmd->add_option("--stage3-population", ga.stage3_population, "Stage 3 population")->capture_default_str();
  s_cmd->add_option("--stage2-generations", ga.stage2_generations, "Stage 2 generations")->capture_default_str();
  s_cmd->add_option("--stage3-generations", ga.stage3_generations, "Stage 3 generations")->capture_default_str();
  s_cmd->add_option("--elite", ga.elite, "Elite children per generation")->capture_default_str();
  s_cmd->add_option("--crossover-fraction", ga.crossover_fraction, "Crossover fraction")->capture_default_str();
  s_cmd->add_option("--tournament", ga.tournament, "Tournament size")->capture_default_str();
  s_cmd->add_option("--power", ga.power, "Power-mutation exponent")->capture_default_str();
  s_cmd->add_option("--stage1-truncation", ga.stage1_truncation, "Stage 1 truncation")->capture_default_str();
  s_cmd->add_option("--stage2-truncation", ga.stage2_truncation, "Stage 2 truncation")->capture_default_str();
  s_cmd->add_option("--max-truncation", ga.max_truncation, "Stage 3 maximum truncation")->capture_default_str();
  s_cmd->add_option("--stage1-max-leak", ga.stage1_max_leak, "Stage 1 truncation leak budget")->capture_default_str();
  s_cmd->add_option("--max-leak", ga.max_leak, "Stage 2/3 truncation leak budget")->capture_default_str();
  s_cmd->add_option("--p-min", ga.p_min, "Minimum herald probability")->capture_default_str();
  s_cmd->add_option("--slots", ga.space.slots, "Operator slots per genome (1-8)")->capture_default_str();
  s_cmd->add_option("--report-best", ga.report_best, "Genomes listed in the final report")->capture_default_str();
  s_cmd->add_option("--min-alpha", srch.min_alpha, "Smallest |alpha| of cat-like targets")->capture_default_str();
  s_cmd->add_option("--min-delta", srch.min_delta, "Smallest delta of ON targets")->capture_default_str();
  s_cmd->add_option("--report", srch.report_path, "JSON-lines reports (default <out-dir>/search.jsonl)");
  s_cmd->add_option("--summary", srch.summary_path, "Best-experiment summary (default <out-dir>/best.json)");
  s_cmd->add_option("--bank-cache", srch.bank_cache, "Directory caching target banks between runs");

  cli::SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth-dataset", "Write labelled train/test number distributions");
  synth_cmd->add_option("--train-size", synth.sizes.train, "Training states")->capture_default_str();
  synth_cmd->add_option("--test-size", synth.sizes.test, "Test states")->capture_default_str();
  synth_cmd->add_option("--truncation", synth.truncation, "Truncation")->check(CLI::Range(10, 400))
      ->capture_default_str();
  synth_cmd->add_option("--output-prefix", synth.prefix, "Output prefix (default <out-dir>/dataset)");

  cli::InspectOptions inspect;
  auto* inspect_cmd = app.add_subcommand("inspect-report", "Summarize a JSON-lines search report");
  inspect_cmd->add_option("report", inspect.report_path, "Report file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kConfigError;
  }

  if (paper_scale) {
    ga.stage1_count = 8'000'000;
    ga.stage2_population = 5'000'000;
    ga.stage3_population = 10'000;
  }
  common.config_text = effective_config(app);
  if (dump_config) {
    std::cout << common.config_text;
    return cli::kOk;
  }

  try {
    if (*verify_cmd) return cli::verify_table(common, verify);
    if (*train_cmd) return cli::train_classifier(common, train);
    if (*cls_cmd) {
      if (cls.state_path.empty() && cls.genome_path.empty() && cls.design.empty())
        throw ConfigError("classify needs one of --state, --genome or --design");
      return cli::classify(common, cls);
    }
    if (*s_cmd) return cli::search(common, srch);
    if (*synth_cmd) return cli::synth_dataset(common, synth);
    if (*inspect_cmd) return cli::inspect_report(common, inspect);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const TrainingDivergedError& e) {
    std::cerr << "training diverged at step " << e.step() << ": " << e.what() << "\n";
    return cli::kThresholdFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kThresholdFailure;
  }
  return cli::kOk;
}
