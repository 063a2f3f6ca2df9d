#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "qse/targets/targets.hpp"

namespace qse {

/// Per-parameter resolutions of a family grid. The meaning of each entry
/// follows the family's parameter order:
///   Cat:         |alpha|, arg alpha, theta
///   SqueezedCat: |alpha|, arg alpha, theta, |z|, arg z
///   Zombie:      |alpha|, arg alpha
///   ON:          n, delta
///   CubicPhase:  gamma, z
/// Magnitudes, delta, gamma and z include both endpoints; angles are
/// periodic and exclude 2 pi. n always enumerates every integer in range.
struct GridSpec {
  TargetKind kind = TargetKind::Cat;
  std::vector<int> steps;

  static GridSpec defaults(TargetKind kind);
  std::size_t point_count() const;
  std::string key() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct TargetGrid {
  TargetFamily family;
  GridSpec spec;
  std::vector<TargetParams> points;

  static TargetGrid build(const GridSpec& spec);
  static TargetGrid build(const TargetFamily& family, const GridSpec& spec);
  /// Single-point grid, e.g. a fixed published target.
  static TargetGrid single(const TargetFamily& family, const TargetParams& params);
};

struct GridMatch {
  double fidelity = 0.0;
  TargetParams params;
  std::size_t index = 0;
};

/// Precomputed conjugated target amplitudes, one row per grid point, at a
/// fixed truncation. Immutable after construction and shared read-only
/// across fitness evaluations.
/// Row-major so a fidelity sweep streams each target contiguously.
using BankRows = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class TargetBank {
 public:
  TargetBank(TargetGrid grid, int truncation);

  const TargetGrid& grid() const { return grid_; }
  TargetKind kind() const { return grid_.family.kind; }
  int truncation() const { return truncation_; }
  std::size_t size() const { return grid_.points.size(); }

  /// Max fidelity over every grid point, with the achieving parameters.
  GridMatch best(const SingleModeState& state) const;
  /// Fidelity against every grid point.
  Eigen::VectorXd fidelities(const SingleModeState& state) const;

  void save(const std::filesystem::path& path) const;
  /// Loads a bank; returns nullptr if the file's key does not match.
  static std::shared_ptr<const TargetBank> load(const std::filesystem::path& path,
                                                const TargetGrid& grid, int truncation);

 private:
  TargetBank(TargetGrid grid, int truncation, BankRows rows);

  TargetGrid grid_;
  int truncation_;
  BankRows conj_rows_;  // points x (truncation + 1)
};

GridMatch best_fidelity_over_grid(const SingleModeState& state, const TargetBank& bank);

/// Loads a matching bank from `cache_dir` or builds and stores one.
std::shared_ptr<const TargetBank> cached_bank(const TargetGrid& grid, int truncation,
                                              const std::filesystem::path& cache_dir);

/// Continuous coordinate-descent refinement of a grid maximum. Integer
/// parameters (ON n) stay fixed. Used for final reports only.
GridMatch polish_match(const SingleModeState& state, const TargetFamily& family,
                       const GridMatch& start, const GridSpec& spec, int iterations = 20);

}  // namespace qse
