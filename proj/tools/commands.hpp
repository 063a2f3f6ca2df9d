#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qse/classifier/dataset.hpp"
#include "qse/classifier/train.hpp"
#include "qse/search/pipeline.hpp"

namespace qse::cli {

enum ExitCode { kOk = 0, kThresholdFailure = 1, kConfigError = 2 };

struct Common {
  std::filesystem::path out_dir = "qse-out";
  int threads = 1;
  std::uint64_t seed = 1;
  /// The effective configuration, stored in every output file.
  std::string config_text;
};

struct VerifyOptions {
  int truncation = 100;
};

struct TrainOptions {
  DatasetSizes sizes;
  int truncation = kDefaultDatasetTruncation;
  TrainConfig train;
  std::filesystem::path model_path;
  std::filesystem::path metrics_path;
  double min_accuracy = 0.0;
};

struct ClassifyOptions {
  std::filesystem::path model_path;
  std::filesystem::path state_path;
  std::filesystem::path genome_path;
  std::string design;
  int truncation = 30;
};

struct SearchOptions {
  GaConfig ga;
  std::vector<std::string> targets = {"cat"};
  std::filesystem::path model_path;
  bool no_surrogate = false;
  bool dry_run = false;
  double min_alpha = 0.0;
  double min_delta = 0.0;
  std::filesystem::path report_path;
  std::filesystem::path summary_path;
  std::filesystem::path bank_cache;
};

struct SynthOptions {
  DatasetSizes sizes;
  int truncation = kDefaultDatasetTruncation;
  std::filesystem::path prefix;
};

struct InspectOptions {
  std::filesystem::path report_path;
};

int verify_table(const Common& common, const VerifyOptions& o);
int train_classifier(const Common& common, TrainOptions o);
int classify(const Common& common, const ClassifyOptions& o);
int search(const Common& common, SearchOptions o);
int synth_dataset(const Common& common, SynthOptions o);
int inspect_report(const Common& common, const InspectOptions& o);

}  // namespace qse::cli
