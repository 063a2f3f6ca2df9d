#pragma once

#include <Eigen/Dense>

#include "qse/fock/state.hpp"

namespace qse {

inline constexpr int kMaxHeraldPhotons = 8;
inline constexpr double kDefaultHeraldFloor = 1e-8;

/// Photon-number-resolving detection outcome on mode 1.
struct HeraldSpec {
  int n = 0;

  static HeraldSpec photons(int n) {
    if (n < 0 || n > kMaxHeraldPhotons) throw DomainError("herald photon count must be in [0, 8]");
    return HeraldSpec{n};
  }
  friend bool operator==(const HeraldSpec&, const HeraldSpec&) = default;
};

struct HeraldResult {
  SingleModeState state;
  double probability = 0.0;
};

/// Projects mode 1 onto |n> and returns the normalized mode-2 state.
/// Throws HeraldImprobableError when the outcome probability is below p_min.
HeraldResult herald(const TwoModeState& state, HeraldSpec h, double p_min = kDefaultHeraldFloor);

/// Probability of every outcome 0..truncation on mode 1.
Eigen::VectorXd herald_distribution(const TwoModeState& state);

/// |<a|b>|^2; the shorter state is zero-padded.
double fidelity(const SingleModeState& a, const SingleModeState& b);

double mean_photon_number(const SingleModeState& state);
/// Sum of both modes' mean photon numbers.
double mean_photon_number(const TwoModeState& state);

/// |c_n| for every Fock coefficient; the classifier's input representation.
Eigen::VectorXd number_distribution(const SingleModeState& state);

}  // namespace qse
