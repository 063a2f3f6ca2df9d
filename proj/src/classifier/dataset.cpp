#include "qse/classifier/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "qse/fock/measure.hpp"

namespace qse {
namespace {

using cd = std::complex<double>;
constexpr char kMagic[] = "QSEDATA\n";
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform over the annulus min_mag <= |v| <= max_mag.
cd disk_sample(std::mt19937_64& rng, double min_mag, double max_mag) {
  const double mag = std::sqrt(uniform(rng, min_mag * min_mag, max_mag * max_mag));
  return std::polar(mag, uniform(rng, 0.0, kTwoPi));
}

// Stream index 0 for train, 1 for test.
std::mt19937_64 split_rng(std::uint64_t seed, Split split) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(split == Split::Train ? 0 : 1)};
  return std::mt19937_64(seq);
}

}  // namespace

std::string to_string(Split s) { return s == Split::Train ? "train" : "test"; }

std::vector<std::size_t> LabeledDataset::category_counts() const {
  std::vector<std::size_t> counts(kNumCategories, 0);
  for (int l : labels) ++counts.at(static_cast<std::size_t>(l));
  return counts;
}

TargetParams sample_target_params(const TargetFamily& f, std::mt19937_64& rng) {
  switch (f.kind) {
    case TargetKind::Cat: {
      const cd alpha = disk_sample(rng, f.min_alpha, f.max_alpha);
      return TargetParams::cat(alpha, uniform(rng, 0.0, kTwoPi));
    }
    case TargetKind::SqueezedCat: {
      const cd alpha = disk_sample(rng, f.min_alpha, f.max_alpha);
      const double theta = uniform(rng, 0.0, kTwoPi);
      return TargetParams::squeezed_cat(alpha, theta, disk_sample(rng, 0.0, f.max_squeezing));
    }
    case TargetKind::Zombie: return TargetParams::zombie(disk_sample(rng, f.min_alpha, f.max_alpha));
    case TargetKind::ON: {
      const int n = std::uniform_int_distribution<int>(f.min_n, f.max_n)(rng);
      return TargetParams::on(n, uniform(rng, f.min_delta, f.max_delta));
    }
    case TargetKind::CubicPhase: {
      const double gamma = uniform(rng, 0.0, f.max_gamma);
      return TargetParams::cubic_phase(gamma, uniform(rng, f.min_cubic_z, f.max_cubic_z));
    }
  }
  throw DomainError("unknown target kind");
}

SingleModeState random_other_state(int truncation, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVector<double> v(truncation + 1);
  for (int n = 0; n <= truncation; ++n) {
    const double re = normal(rng);
    v(n) = cd(re, normal(rng)) * std::exp(-double(n) / kOtherEnvelope);
  }
  return SingleModeState(std::move(v));
}

SingleModeState sample_category_state(StateCategory category, int truncation, std::mt19937_64& rng) {
  if (category == StateCategory::Other) return random_other_state(truncation, rng);
  const auto family = TargetFamily::search(static_cast<TargetKind>(static_cast<int>(category)));
  for (;;) {
    try {
      return make_target(family, sample_target_params(family, rng), truncation);
    } catch (const DomainError&) {
      // Degenerate member (odd cat at alpha = 0); draw again.
    }
  }
}

LabeledDataset synthesize_split(std::size_t size, Split split, int truncation, std::uint64_t seed) {
  if (truncation < 10) throw DomainError("dataset truncation must be at least 10");
  std::mt19937_64 rng = split_rng(seed, split);
  std::vector<int> labels;
  labels.reserve(size);
  for (int c = 0; c < kNumCategories; ++c) {
    const std::size_t count = size / kNumCategories + (static_cast<std::size_t>(c) < size % kNumCategories ? 1 : 0);
    labels.insert(labels.end(), count, c);
  }
  std::shuffle(labels.begin(), labels.end(), rng);

  LabeledDataset data;
  data.split = split;
  data.labels = labels;
  data.inputs.resize(truncation + 1, static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) {
    const auto state = sample_category_state(static_cast<StateCategory>(labels[i]), truncation, rng);
    data.inputs.col(static_cast<Eigen::Index>(i)) = number_distribution(state);
  }
  return data;
}

DatasetSplits synthesize_dataset(const DatasetSizes& sizes, int truncation, std::uint64_t seed) {
  return {synthesize_split(sizes.train, Split::Train, truncation, seed),
          synthesize_split(sizes.test, Split::Test, truncation, seed)};
}

void LabeledDataset::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write dataset file " + path.string());
  const nlohmann::json header = {{"version", kDatasetFormatVersion},
                                 {"split", to_string(split)},
                                 {"rows", inputs.rows()},
                                 {"cols", inputs.cols()}};
  out << kMagic << header.dump() << "\n";
  std::vector<std::int32_t> l(labels.begin(), labels.end());
  out.write(reinterpret_cast<const char*>(l.data()), static_cast<std::streamsize>(l.size() * sizeof(std::int32_t)));
  out.write(reinterpret_cast<const char*>(inputs.data()),
            static_cast<std::streamsize>(inputs.size() * sizeof(double)));
}

LabeledDataset LabeledDataset::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read dataset file " + path.string());
  std::string magic(sizeof(kMagic) - 1, '\0');
  in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (magic != kMagic) throw ParseError("not a dataset file", 1, 0);
  std::string line;
  std::getline(in, line);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("dataset header: ") + e.what(), 2, e.byte);
  }
  if (header.value("version", 0) != kDatasetFormatVersion) throw ParseError("unsupported dataset version", 2, 0);
  LabeledDataset data;
  data.split = header.at("split") == "test" ? Split::Test : Split::Train;
  const auto rows = header.at("rows").get<Eigen::Index>();
  const auto cols = header.at("cols").get<Eigen::Index>();
  std::vector<std::int32_t> l(static_cast<std::size_t>(cols));
  in.read(reinterpret_cast<char*>(l.data()), static_cast<std::streamsize>(l.size() * sizeof(std::int32_t)));
  data.labels.assign(l.begin(), l.end());
  data.inputs.resize(rows, cols);
  in.read(reinterpret_cast<char*>(data.inputs.data()), static_cast<std::streamsize>(data.inputs.size() * sizeof(double)));
  if (!in) throw ParseError("dataset file truncated", 3, 0);
  for (int v : data.labels) {
    if (v < 0 || v >= kNumCategories) throw ParseError("dataset label out of range", 3, 0);
  }
  return data;
}

}  // namespace qse
