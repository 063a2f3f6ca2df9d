#pragma once

#include <complex>
#include <string>
#include <variant>

#include "qse/fock/state.hpp"

namespace qse {

// Experimental limits of the input-state toolbox.
inline constexpr double kMaxCoherentAmplitude = 4.0;
inline constexpr double kMaxInputSqueezing = 1.3;
inline constexpr int kMaxInputFock = 2;

// True when |v| <= max up to rounding.
inline bool within_bound(double v, double max) { return v <= max * (1.0 + 1e-12); }

// Default leak allowed when truncating an analytic series.
inline constexpr double kDefaultMaxLeak = 1e-6;

enum class InputKind { Fock, Coherent, SqueezedVacuum, TwoModeSqueezedVacuum };

std::string to_string(InputKind kind);

/// One toolbox input state. TMSV occupies both modes, every other kind one.
class InputSpec {
 public:
  static InputSpec fock(int n);
  static InputSpec coherent(std::complex<double> alpha);
  static InputSpec squeezed_vacuum(std::complex<double> z);
  static InputSpec two_mode_squeezed_vacuum(std::complex<double> z);

  InputKind kind() const { return kind_; }
  int photons() const { return n_; }
  std::complex<double> param() const { return param_; }
  bool is_two_mode() const { return kind_ == InputKind::TwoModeSqueezedVacuum; }

  std::string describe() const;

  friend bool operator==(const InputSpec&, const InputSpec&) = default;

 private:
  InputSpec(InputKind kind, int n, std::complex<double> param)
      : kind_(kind), n_(n), param_(param) {}

  InputKind kind_;
  int n_ = 0;
  std::complex<double> param_{};
};

/// Analytic truncated Fock coefficients of a single-mode input.
/// Throws TruncationError if the kept norm^2 is below 1 - max_leak.
SingleModeState build_single_mode(const InputSpec& spec, int truncation,
                                  double max_leak = kDefaultMaxLeak);

/// Analytic TMSV coefficients on the |n,n> diagonal.
TwoModeState build_two_mode(const InputSpec& spec, int truncation,
                            double max_leak = kDefaultMaxLeak);

using InputState = std::variant<SingleModeState, TwoModeState>;
InputState build_input(const InputSpec& spec, int truncation, double max_leak = kDefaultMaxLeak);

// Untruncated coefficient series, used by the input builders and by targets.
CVector<double> coherent_series(std::complex<double> alpha, int truncation);
CVector<double> squeezed_vacuum_series(std::complex<double> z, int truncation);

}  // namespace qse
