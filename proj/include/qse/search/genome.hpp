#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qse/fock/experiment.hpp"

namespace qse {

inline constexpr int kDefaultOperatorSlots = 3;
inline constexpr int kMaxOperatorSlots = 8;

enum class InputArm { SingleModePair = 0, TwoModeSqueezed = 1 };

/// The toolbox a genome can express. Categorical genes index into the
/// allowed lists, so every genome decodes to a simulable experiment.
struct GenomeSpace {
  int slots = kDefaultOperatorSlots;
  std::vector<InputArm> arms = {InputArm::SingleModePair, InputArm::TwoModeSqueezed};
  std::vector<InputKind> single_mode_inputs = {InputKind::Fock, InputKind::Coherent,
                                               InputKind::SqueezedVacuum};
  std::vector<OperatorKind> operators = {OperatorKind::Identity, OperatorKind::BeamSplitter,
                                         OperatorKind::PhaseShift, OperatorKind::Displacement};
  int max_fock = kMaxInputFock;
  int max_herald = kMaxHeraldPhotons;

  /// Fock-vacuum inputs, identity operators and herald 0 only.
  static GenomeSpace vacuum_only();

  /// Throws ConfigError.
  void validate() const;

  std::size_t categorical_size() const { return static_cast<std::size_t>(6 + 2 * slots); }
  std::size_t continuous_size() const { return static_cast<std::size_t>(6 + 2 * slots); }
  /// Number of values each categorical gene can take.
  std::vector<int> cardinalities() const;

  // Gene positions.
  //   categorical: arm, kind a, kind b, fock a, fock b, op kind x slots, op mode x slots, herald
  //   continuous:  |a|, arg a, |b|, arg b, |tmsv|, arg tmsv, op p0 x slots, op p1 x slots
  static constexpr std::size_t kArm = 0, kKindA = 1, kKindB = 2, kFockA = 3, kFockB = 4, kOpKind = 5;
  std::size_t op_mode_gene(int slot) const { return kOpKind + static_cast<std::size_t>(slots + slot); }
  std::size_t herald_gene() const { return kOpKind + static_cast<std::size_t>(2 * slots); }
  static constexpr std::size_t kMagA = 0, kArgA = 1, kMagB = 2, kArgB = 3, kMagTmsv = 4, kArgTmsv = 5, kOpP0 = 6;
  std::size_t op_p1_gene(int slot) const { return kOpP0 + static_cast<std::size_t>(slots + slot); }
};

/// Flat experiment encoding: categorical genes are indices, continuous genes
/// lie in [0, 1] and map affinely onto physical ranges.
struct Genome {
  std::vector<int> categorical;
  std::vector<double> continuous;

  friend bool operator==(const Genome&, const Genome&) = default;
};

/// Throws ShapeError when the genome does not match the space's layout.
void check_layout(const GenomeSpace& space, const Genome& g);

Genome random_genome(const GenomeSpace& space, std::mt19937_64& rng);

/// Continuous genes are clamped to [0, 1]; unused genes are ignored.
Experiment decode(const GenomeSpace& space, const Genome& g);

/// Inverse of decode on the physical configuration. Unused genes are 0.
/// Throws ShapeError if the experiment is not expressible in the space.
Genome encode(const GenomeSpace& space, const Experiment& e);

std::string to_string(const Genome& g);

}  // namespace qse
