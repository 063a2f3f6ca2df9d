#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qse/fock/state.hpp"

namespace qse {

enum class TargetKind { Cat = 0, SqueezedCat = 1, Zombie = 2, ON = 3, CubicPhase = 4 };

inline constexpr std::array<TargetKind, 5> kAllTargetKinds = {
    TargetKind::Cat, TargetKind::SqueezedCat, TargetKind::Zombie, TargetKind::ON,
    TargetKind::CubicPhase};

std::string to_string(TargetKind kind);
/// Accepts "cat", "squeezed_cat", "zombie", "on", "cubic_phase" (case-insensitive).
std::optional<TargetKind> parse_target_kind(const std::string& name);

/// Parameters of a target state; which fields matter depends on the kind.
///   Cat:         alpha, theta
///   SqueezedCat: alpha, theta, z (complex)
///   Zombie:      alpha
///   ON:          n, delta (real)
///   CubicPhase:  gamma, z (real part used)
struct TargetParams {
  std::complex<double> alpha{};
  double theta = 0.0;
  std::complex<double> z{};
  int n = 1;
  double delta = 0.0;
  double gamma = 0.0;

  static TargetParams cat(std::complex<double> alpha, double theta);
  static TargetParams squeezed_cat(std::complex<double> alpha, double theta, std::complex<double> z);
  static TargetParams zombie(std::complex<double> alpha);
  static TargetParams on(int n, double delta);
  static TargetParams cubic_phase(double gamma, double z);

  std::string describe(TargetKind kind) const;
};

/// Closed parameter ranges of a family. `search` holds the ranges the
/// optimizer explores; `verification` widens them to admit every published
/// target (|alpha| <= 2.5, signed real delta and z).
struct TargetFamily {
  TargetKind kind = TargetKind::Cat;
  double min_alpha = 0.0;
  double max_alpha = 2.0;
  double max_squeezing = 1.4;
  int min_n = 1;
  int max_n = 10;
  double min_delta = 0.0;
  double max_delta = 1.0;
  double max_gamma = 0.25;
  double min_cubic_z = 0.0;
  double max_cubic_z = 1.4;

  static TargetFamily search(TargetKind kind);
  static TargetFamily verification(TargetKind kind);

  /// Throws DomainError naming the first parameter out of range.
  void check(const TargetParams& params) const;
};

SingleModeState make_target(const TargetFamily& family, const TargetParams& params, int truncation);
/// Convenience: validates against the verification ranges.
SingleModeState make_target(TargetKind kind, const TargetParams& params, int truncation);

/// N(D(g) S(z)|0>) coefficients: S(z)|alpha> = D(g) S(z)|0> with
/// g = alpha cosh r - alpha* e^{i phi} sinh r. Unnormalized, exact per entry.
CVector<double> squeezed_coherent_series(std::complex<double> alpha, std::complex<double> z,
                                         int truncation);

struct CubicPhaseResult {
  SingleModeState state;
  double truncation_loss = 0.0;  // weight pushed above the working truncation
};

/// exp(i gamma q^3) S(z)|0>, q = (a + a^dag)/sqrt 2. The exponential is a
/// dense unitary from the Hermitian eigendecomposition of q^3 on a padded
/// space; the weight leaving the working truncation is reported.
CubicPhaseResult cubic_phase_state(double gamma, double z, int truncation);

}  // namespace qse
