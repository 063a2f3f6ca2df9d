#pragma once

#include <string>
#include <vector>

#include "qse/fock/inputs.hpp"
#include "qse/fock/measure.hpp"
#include "qse/fock/operators.hpp"

namespace qse {

/// One heralded two-mode experiment: inputs, an ordered operator sequence,
/// and a photon-number measurement on mode 1.
///
/// `inputs` holds either a single TMSV or two single-mode states (mode 1
/// first).
struct Experiment {
  std::vector<InputSpec> inputs;
  std::vector<OperatorSpec> operators;
  HeraldSpec herald;

  void validate() const;
  std::string describe() const;

  friend bool operator==(const Experiment&, const Experiment&) = default;
};

struct SimOptions {
  double max_leak = kDefaultMaxLeak;  // input truncation and displacement leak budget
  double p_min = kDefaultHeraldFloor;
};

struct SimulationResult {
  SingleModeState state;
  double herald_probability = 0.0;
  double leaked_norm = 0.0;  // accumulated over inputs and operators
  TwoModeState pre_measurement;
};

/// Builds the inputs, applies the operators in order and heralds on mode 1.
SimulationResult simulate(const Experiment& experiment, int truncation,
                          const SimOptions& options = {});

}  // namespace qse
