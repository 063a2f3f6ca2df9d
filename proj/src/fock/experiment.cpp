#include "qse/fock/experiment.hpp"

#include <cmath>
#include <sstream>

namespace qse {

void Experiment::validate() const {
  if (inputs.size() == 1) {
    if (!inputs[0].is_two_mode()) throw ShapeError("a single input must be a TMSV");
  } else if (inputs.size() == 2) {
    if (inputs[0].is_two_mode() || inputs[1].is_two_mode())
      throw ShapeError("two inputs must both be single-mode");
  } else {
    throw ShapeError("an experiment needs one TMSV or two single-mode inputs");
  }
  if (herald.n < 0 || herald.n > kMaxHeraldPhotons) throw DomainError("herald outside [0, 8]");
}

std::string Experiment::describe() const {
  std::ostringstream os;
  os << "<" << herald.n << "| ";
  for (auto it = operators.rbegin(); it != operators.rend(); ++it) {
    if (it->kind() == OperatorKind::Identity) continue;
    os << it->describe() << " ";
  }
  if (inputs.size() == 1) {
    os << inputs[0].describe();
  } else {
    os << inputs[0].describe() << " (x) " << inputs[1].describe();
  }
  return os.str();
}

namespace {

double input_leak(const CVector<double>& unnormalized) { return 1.0 - unnormalized.squaredNorm(); }

}  // namespace

SimulationResult simulate(const Experiment& experiment, int truncation, const SimOptions& options) {
  experiment.validate();
  double leaked = 0.0;
  TwoModeState state;
  if (experiment.inputs.size() == 1) {
    state = build_two_mode(experiment.inputs[0], truncation, options.max_leak);
    const double r = std::abs(experiment.inputs[0].param());
    leaked += std::pow(std::tanh(r), 2 * (truncation + 1));
  } else {
    const auto& a = experiment.inputs[0];
    const auto& b = experiment.inputs[1];
    const SingleModeState sa = build_single_mode(a, truncation, options.max_leak);
    const SingleModeState sb = build_single_mode(b, truncation, options.max_leak);
    for (const InputSpec* spec : {&a, &b}) {
      if (spec->kind() == InputKind::Coherent) {
        leaked += input_leak(coherent_series(spec->param(), truncation));
      } else if (spec->kind() == InputKind::SqueezedVacuum) {
        leaked += input_leak(squeezed_vacuum_series(spec->param(), truncation));
      }
    }
    state = tensor(sa, sb);
  }
  for (const auto& op : experiment.operators) {
    auto outcome = apply_operator_tracked(state, op, options.max_leak);
    leaked += outcome.leaked_norm;
    state = std::move(outcome.state);
  }
  if (experiment.herald.n > truncation) {
    throw TruncationError("herald outcome exceeds the truncation", 0.0);
  }
  HeraldResult heralded = herald(state, experiment.herald, options.p_min);
  return {std::move(heralded.state), heralded.probability, leaked, std::move(state)};
}

}  // namespace qse
