#include "qse/search/genome.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qse {
namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class T>
int index_of(const std::vector<T>& list, T value) {
  const auto it = std::find(list.begin(), list.end(), value);
  if (it == list.end()) throw ShapeError("experiment uses an element outside the genome space");
  return static_cast<int>(it - list.begin());
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

cd polar_gene(double mag, double max_mag, double phase) {
  return std::polar(max_mag * clamp01(mag), kTwoPi * clamp01(phase));
}

double phase_gene(cd v) {
  double a = std::arg(v);
  if (a < 0.0) a += kTwoPi;
  return std::min(a / kTwoPi, 1.0);
}

double mag_gene(cd v, double max_mag) { return std::min(std::abs(v) / max_mag, 1.0); }

}  // namespace

GenomeSpace GenomeSpace::vacuum_only() {
  GenomeSpace s;
  s.arms = {InputArm::SingleModePair};
  s.single_mode_inputs = {InputKind::Fock};
  s.operators = {OperatorKind::Identity};
  s.max_fock = 0;
  s.max_herald = 0;
  return s;
}

void GenomeSpace::validate() const {
  if (slots < 1 || slots > kMaxOperatorSlots) throw ConfigError("operator slots must be in [1, 8]");
  if (arms.empty() || operators.empty()) throw ConfigError("genome space needs at least one arm and operator");
  if (std::find(arms.begin(), arms.end(), InputArm::SingleModePair) != arms.end() && single_mode_inputs.empty())
    throw ConfigError("single-mode arm needs at least one input kind");
  for (InputKind k : single_mode_inputs) {
    if (k == InputKind::TwoModeSqueezedVacuum) throw ConfigError("TMSV is selected by the arm gene");
  }
  if (max_fock < 0 || max_fock > kMaxInputFock) throw ConfigError("max_fock must be in [0, 2]");
  if (max_herald < 0 || max_herald > kMaxHeraldPhotons) throw ConfigError("max_herald must be in [0, 8]");
}

std::vector<int> GenomeSpace::cardinalities() const {
  std::vector<int> c(categorical_size());
  const int kinds = std::max<int>(1, static_cast<int>(single_mode_inputs.size()));
  c[kArm] = static_cast<int>(arms.size());
  c[kKindA] = c[kKindB] = kinds;
  c[kFockA] = c[kFockB] = max_fock + 1;
  for (int s = 0; s < slots; ++s) {
    c[kOpKind + static_cast<std::size_t>(s)] = static_cast<int>(operators.size());
    c[op_mode_gene(s)] = 2;
  }
  c[herald_gene()] = max_herald + 1;
  return c;
}

void check_layout(const GenomeSpace& space, const Genome& g) {
  if (g.categorical.size() != space.categorical_size() || g.continuous.size() != space.continuous_size())
    throw ShapeError("genome layout does not match the genome space");
  const auto card = space.cardinalities();
  for (std::size_t i = 0; i < card.size(); ++i) {
    if (g.categorical[i] < 0 || g.categorical[i] >= card[i]) throw ShapeError("categorical gene out of range");
  }
}

Genome random_genome(const GenomeSpace& space, std::mt19937_64& rng) {
  Genome g;
  for (int c : space.cardinalities()) g.categorical.push_back(std::uniform_int_distribution<int>(0, c - 1)(rng));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  g.continuous.resize(space.continuous_size());
  for (double& x : g.continuous) x = u(rng);
  return g;
}

Experiment decode(const GenomeSpace& space, const Genome& g) {
  check_layout(space, g);
  const auto& c = g.categorical;
  const auto& x = g.continuous;
  Experiment e;
  if (space.arms[static_cast<std::size_t>(c[GenomeSpace::kArm])] == InputArm::TwoModeSqueezed) {
    e.inputs.push_back(InputSpec::two_mode_squeezed_vacuum(
        polar_gene(x[GenomeSpace::kMagTmsv], kMaxInputSqueezing, x[GenomeSpace::kArgTmsv])));
  } else {
    auto single = [&](std::size_t kind_gene, std::size_t fock_gene, std::size_t mag, std::size_t arg) {
      switch (space.single_mode_inputs[static_cast<std::size_t>(c[kind_gene])]) {
        case InputKind::Coherent: return InputSpec::coherent(polar_gene(x[mag], kMaxCoherentAmplitude, x[arg]));
        case InputKind::SqueezedVacuum:
          return InputSpec::squeezed_vacuum(polar_gene(x[mag], kMaxInputSqueezing, x[arg]));
        default: return InputSpec::fock(c[fock_gene]);
      }
    };
    e.inputs.push_back(single(GenomeSpace::kKindA, GenomeSpace::kFockA, GenomeSpace::kMagA, GenomeSpace::kArgA));
    e.inputs.push_back(single(GenomeSpace::kKindB, GenomeSpace::kFockB, GenomeSpace::kMagB, GenomeSpace::kArgB));
  }
  for (int s = 0; s < space.slots; ++s) {
    const int mode = c[space.op_mode_gene(s)] + 1;
    const double p0 = clamp01(x[GenomeSpace::kOpP0 + static_cast<std::size_t>(s)]);
    const double p1 = clamp01(x[space.op_p1_gene(s)]);
    switch (space.operators[static_cast<std::size_t>(c[GenomeSpace::kOpKind + static_cast<std::size_t>(s)])]) {
      case OperatorKind::Identity: e.operators.push_back(OperatorSpec::identity()); break;
      case OperatorKind::BeamSplitter: e.operators.push_back(OperatorSpec::beam_splitter(p0)); break;
      case OperatorKind::PhaseShift: e.operators.push_back(OperatorSpec::phase_shift(mode, kTwoPi * p0)); break;
      case OperatorKind::Displacement:
        e.operators.push_back(OperatorSpec::displacement(mode, std::polar(kMaxDisplacement * p0, kTwoPi * p1)));
        break;
    }
  }
  e.herald = HeraldSpec::photons(c[space.herald_gene()]);
  return e;
}

Genome encode(const GenomeSpace& space, const Experiment& e) {
  e.validate();
  if (static_cast<int>(e.operators.size()) > space.slots) throw ShapeError("too many operators for the genome space");
  if (e.herald.n > space.max_herald) throw ShapeError("herald outcome outside the genome space");
  Genome g;
  g.categorical.assign(space.categorical_size(), 0);
  g.continuous.assign(space.continuous_size(), 0.0);
  auto& c = g.categorical;
  auto& x = g.continuous;

  if (e.inputs.size() == 1) {
    c[GenomeSpace::kArm] = index_of(space.arms, InputArm::TwoModeSqueezed);
    x[GenomeSpace::kMagTmsv] = mag_gene(e.inputs[0].param(), kMaxInputSqueezing);
    x[GenomeSpace::kArgTmsv] = phase_gene(e.inputs[0].param());
  } else {
    c[GenomeSpace::kArm] = index_of(space.arms, InputArm::SingleModePair);
    auto single = [&](const InputSpec& in, std::size_t kind_gene, std::size_t fock_gene, std::size_t mag,
                      std::size_t arg) {
      c[kind_gene] = index_of(space.single_mode_inputs, in.kind());
      if (in.kind() == InputKind::Fock) {
        if (in.photons() > space.max_fock) throw ShapeError("Fock input outside the genome space");
        c[fock_gene] = in.photons();
      } else {
        const double max = in.kind() == InputKind::Coherent ? kMaxCoherentAmplitude : kMaxInputSqueezing;
        x[mag] = mag_gene(in.param(), max);
        x[arg] = phase_gene(in.param());
      }
    };
    single(e.inputs[0], GenomeSpace::kKindA, GenomeSpace::kFockA, GenomeSpace::kMagA, GenomeSpace::kArgA);
    single(e.inputs[1], GenomeSpace::kKindB, GenomeSpace::kFockB, GenomeSpace::kMagB, GenomeSpace::kArgB);
  }

  // Missing trailing slots are identities.
  for (int s = 0; s < space.slots; ++s) {
    const OperatorSpec op =
        s < static_cast<int>(e.operators.size()) ? e.operators[static_cast<std::size_t>(s)] : OperatorSpec::identity();
    c[GenomeSpace::kOpKind + static_cast<std::size_t>(s)] = index_of(space.operators, op.kind());
    const std::size_t p0 = GenomeSpace::kOpP0 + static_cast<std::size_t>(s);
    switch (op.kind()) {
      case OperatorKind::Identity: break;
      case OperatorKind::BeamSplitter: x[p0] = op.value(); break;
      case OperatorKind::PhaseShift:
        c[space.op_mode_gene(s)] = op.mode() - 1;
        x[p0] = op.value() / kTwoPi;
        break;
      case OperatorKind::Displacement:
        c[space.op_mode_gene(s)] = op.mode() - 1;
        x[p0] = mag_gene(op.beta(), kMaxDisplacement);
        x[space.op_p1_gene(s)] = phase_gene(op.beta());
        break;
    }
  }
  c[space.herald_gene()] = e.herald.n;
  return g;
}

std::string to_string(const Genome& g) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < g.categorical.size(); ++i) os << (i ? " " : "") << g.categorical[i];
  os << " |";
  for (double v : g.continuous) os << " " << v;
  os << "]";
  return os.str();
}

}  // namespace qse
