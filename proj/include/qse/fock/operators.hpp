#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "qse/fock/inputs.hpp"
#include "qse/fock/state.hpp"

namespace qse {

inline constexpr double kMaxDisplacement = 4.0;

enum class OperatorKind { Identity, BeamSplitter, PhaseShift, Displacement };

std::string to_string(OperatorKind kind);

/// A two-mode toolbox operator. Modes are numbered 1 and 2.
class OperatorSpec {
 public:
  static OperatorSpec identity();
  /// Transmissivity T = cos^2(theta_b), T in [0, 1].
  static OperatorSpec beam_splitter(double transmissivity);
  /// exp(i n theta) on one mode, theta in [0, 2 pi].
  static OperatorSpec phase_shift(int mode, double theta);
  /// D(beta) = exp(beta a^dag - beta* a) on one mode, |beta| <= 4.
  static OperatorSpec displacement(int mode, std::complex<double> beta);

  OperatorKind kind() const { return kind_; }
  int mode() const { return mode_; }
  double value() const { return value_; }
  std::complex<double> beta() const { return beta_; }

  std::string describe() const;

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;

 private:
  OperatorSpec(OperatorKind kind, int mode, double value, std::complex<double> beta)
      : kind_(kind), mode_(mode), value_(value), beta_(beta) {}

  OperatorKind kind_;
  int mode_ = 1;
  double value_ = 0.0;
  std::complex<double> beta_{};
};

struct OperatorOutcome {
  TwoModeState state;
  double leaked_norm = 0.0;  // 1 - |U psi|^2 before renormalization
};

/// Applies the operator's matrix at the state's truncation and renormalizes.
/// Displacement uses exact matrix elements restricted to the truncated space,
/// so it can leak norm; a leak above max_leak raises TruncationError.
OperatorOutcome apply_operator_tracked(const TwoModeState& state, const OperatorSpec& op,
                                       double max_leak = kDefaultMaxLeak);

inline TwoModeState apply_operator(const TwoModeState& state, const OperatorSpec& op,
                                   double max_leak = kDefaultMaxLeak) {
  return apply_operator_tracked(state, op, max_leak).state;
}

/// Beam splitter U_T = exp(-i theta_b (e^{i phi} a^dag b + e^{-i phi} a b^dag)),
/// cos^2 theta_b = T, acting on a raw amplitude array. phi defaults to the
/// toolbox convention -pi/2; other values exist for tests and diagnostics.
CMatrix<double> beam_splitter_apply(const CMatrix<double>& amps, double transmissivity,
                                    double phi = -1.5707963267948966);

/// <m|D(beta)|n> for 0 <= m, n <= truncation.
CMatrix<double> displacement_matrix(std::complex<double> beta, int truncation);

struct OperatorCacheStats {
  std::size_t beam_splitter_entries = 0;
  std::size_t displacement_entries = 0;
};
OperatorCacheStats operator_cache_stats();
void clear_operator_caches();

}  // namespace qse
