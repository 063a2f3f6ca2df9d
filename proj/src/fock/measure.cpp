#include "qse/fock/measure.hpp"

#include <algorithm>
#include <sstream>

namespace qse {

HeraldResult herald(const TwoModeState& state, HeraldSpec h, double p_min) {
  if (h.n < 0 || h.n > state.truncation()) {
    throw DomainError("herald outcome exceeds the state's truncation");
  }
  CVector<double> branch = state.amps().row(h.n).transpose();
  const double p = branch.squaredNorm();
  if (!(p >= p_min) || p == 0.0) {
    std::ostringstream os;
    os << "herald outcome n=" << h.n << " has probability " << p << " below floor " << p_min;
    throw HeraldImprobableError(os.str(), p);
  }
  return {SingleModeState(std::move(branch)), p};
}

Eigen::VectorXd herald_distribution(const TwoModeState& state) {
  return state.amps().cwiseAbs2().rowwise().sum();
}

double fidelity(const SingleModeState& a, const SingleModeState& b) {
  const int common = std::min(a.dim(), b.dim());
  const auto overlap = a.amps().head(common).dot(b.amps().head(common));
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double mean_photon_number(const SingleModeState& state) {
  const Eigen::VectorXd probs = state.amps().cwiseAbs2();
  const Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(state.dim(), 0.0, state.truncation());
  return probs.dot(n);
}

double mean_photon_number(const TwoModeState& state) {
  const Eigen::MatrixXd probs = state.amps().cwiseAbs2();
  const Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(state.dim(), 0.0, state.truncation());
  return probs.rowwise().sum().dot(n) + probs.colwise().sum().transpose().dot(n);
}

Eigen::VectorXd number_distribution(const SingleModeState& state) {
  return state.amps().cwiseAbs();
}

}  // namespace qse
