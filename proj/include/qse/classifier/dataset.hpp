#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "qse/classifier/mlp.hpp"
#include "qse/targets/targets.hpp"

namespace qse {

inline constexpr int kDefaultDatasetTruncation = 60;
inline constexpr int kDatasetFormatVersion = 1;
/// Envelope length of the random "other" states: |c_n| ~ exp(-n / 15).
inline constexpr double kOtherEnvelope = 15.0;

enum class Split { Train, Test };
std::string to_string(Split s);

/// Number distributions stored column-wise with one label per column.
struct LabeledDataset {
  Eigen::MatrixXd inputs;  // (truncation + 1) x size
  std::vector<int> labels;
  Split split = Split::Train;

  std::size_t size() const { return labels.size(); }
  int truncation() const { return static_cast<int>(inputs.rows()) - 1; }
  std::vector<std::size_t> category_counts() const;

  void save(const std::filesystem::path& path) const;
  static LabeledDataset load(const std::filesystem::path& path);

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

struct DatasetSizes {
  std::size_t train = 10000;
  std::size_t test = 3000;
};

struct DatasetSplits {
  LabeledDataset train;
  LabeledDataset test;
};

/// Parameters drawn uniformly over the family's ranges: complex alpha and z
/// uniformly over their disks, real parameters over their intervals.
TargetParams sample_target_params(const TargetFamily& family, std::mt19937_64& rng);

/// Normalized state with complex Gaussian amplitudes under an exp(-n / 15) envelope.
SingleModeState random_other_state(int truncation, std::mt19937_64& rng);

/// One sample of the given category.
SingleModeState sample_category_state(StateCategory category, int truncation, std::mt19937_64& rng);

/// Balanced split: every category gets size / 6 samples, the remainder going to
/// the first categories, then the order is shuffled. Deterministic in `seed`.
LabeledDataset synthesize_split(std::size_t size, Split split, int truncation, std::uint64_t seed);

/// Train and test splits drawn from independent streams of `seed`.
DatasetSplits synthesize_dataset(const DatasetSizes& sizes, int truncation, std::uint64_t seed);

}  // namespace qse
