#include "qse/fock/operators.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace qse {
namespace {

using cd = std::complex<double>;

// Beam splitters conserve total photon number N = n1 + n2. Within the
// truncated block of fixed N the generator is, up to the diagonal phase
// similarity diag(e^{i phi j}), the real symmetric tridiagonal matrix with
// off-diagonals sqrt((n1 + 1)(N - n1)). Its eigensystem depends on neither
// theta_b nor phi, so it is computed once per truncation.
struct PhotonBlock {
  int lo = 0;  // smallest n1 in the block
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
};

struct BeamSplitterBasis {
  std::vector<PhotonBlock> blocks;  // indexed by N
};

BeamSplitterBasis make_basis(int dim) {
  BeamSplitterBasis basis;
  basis.blocks.resize(2 * dim - 1);
  for (int total = 0; total <= 2 * dim - 2; ++total) {
    PhotonBlock& block = basis.blocks[total];
    block.lo = std::max(0, total - dim + 1);
    const int hi = std::min(total, dim - 1);
    const int k = hi - block.lo + 1;
    if (k == 1) {
      block.vectors = Eigen::MatrixXd::Identity(1, 1);
      block.values = Eigen::VectorXd::Zero(1);
      continue;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd sub(k - 1);
    for (int j = 0; j + 1 < k; ++j) {
      const int n1 = block.lo + j;
      sub(j) = std::sqrt(double(n1 + 1) * double(total - n1));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    block.vectors = solver.eigenvectors();
    block.values = solver.eigenvalues();
  }
  return basis;
}

class BeamSplitterCache {
 public:
  std::shared_ptr<const BeamSplitterBasis> get(int dim) {
    {
      std::shared_lock lock(mutex_);
      auto it = entries_.find(dim);
      if (it != entries_.end()) return it->second;
    }
    auto basis = std::make_shared<const BeamSplitterBasis>(make_basis(dim));
    std::unique_lock lock(mutex_);
    return entries_.emplace(dim, std::move(basis)).first->second;
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }
  void clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<int, std::shared_ptr<const BeamSplitterBasis>> entries_;
};

struct DisplacementKey {
  long long re;
  long long im;
  int dim;
  friend bool operator==(const DisplacementKey&, const DisplacementKey&) = default;
};

struct DisplacementKeyHash {
  std::size_t operator()(const DisplacementKey& k) const {
    std::size_t h = std::hash<long long>{}(k.re);
    h ^= std::hash<long long>{}(k.im) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>{}(k.dim) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Parameters are quantized to 1e-12 and the matrix is built from the
// quantized value, so results never depend on cache history. Bounded: the GA rarely
// revisits a continuous parameter, so the map is dropped when full.
class DisplacementCache {
 public:
  static constexpr std::size_t kCapacity = 4096;

  std::shared_ptr<const CMatrix<double>> get(cd beta, int dim) {
    const DisplacementKey key{std::llround(beta.real() * 1e12), std::llround(beta.imag() * 1e12),
                              dim};
    {
      std::shared_lock lock(mutex_);
      auto it = entries_.find(key);
      if (it != entries_.end()) return it->second;
    }
    auto matrix = std::make_shared<const CMatrix<double>>(displacement_matrix(cd(double(key.re) * 1e-12, double(key.im) * 1e-12), dim - 1));
    std::unique_lock lock(mutex_);
    if (entries_.size() >= kCapacity) entries_.clear();
    return entries_.emplace(key, std::move(matrix)).first->second;
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }
  void clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<DisplacementKey, std::shared_ptr<const CMatrix<double>>, DisplacementKeyHash>
      entries_;
};

BeamSplitterCache& bs_cache() {
  static BeamSplitterCache cache;
  return cache;
}

DisplacementCache& disp_cache() {
  static DisplacementCache cache;
  return cache;
}

void check_mode(int mode) {
  if (mode != 1 && mode != 2) throw DomainError("operator mode must be 1 or 2");
}

}  // namespace

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Identity: return "identity";
    case OperatorKind::BeamSplitter: return "beam_splitter";
    case OperatorKind::PhaseShift: return "phase_shift";
    case OperatorKind::Displacement: return "displacement";
  }
  return "?";
}

OperatorSpec OperatorSpec::identity() { return OperatorSpec(OperatorKind::Identity, 1, 0.0, {}); }

OperatorSpec OperatorSpec::beam_splitter(double transmissivity) {
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0))
    throw DomainError("beam splitter transmissivity must lie in [0, 1]");
  return OperatorSpec(OperatorKind::BeamSplitter, 1, transmissivity, {});
}

OperatorSpec OperatorSpec::phase_shift(int mode, double theta) {
  check_mode(mode);
  if (!(theta >= 0.0 && theta <= 2.0 * std::numbers::pi))
    throw DomainError("phase shift angle must lie in [0, 2 pi]");
  return OperatorSpec(OperatorKind::PhaseShift, mode, theta, {});
}

OperatorSpec OperatorSpec::displacement(int mode, cd beta) {
  check_mode(mode);
  if (!within_bound(std::abs(beta), kMaxDisplacement)) throw DomainError("displacement exceeds |beta| <= 4");
  return OperatorSpec(OperatorKind::Displacement, mode, 0.0, beta);
}

std::string OperatorSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case OperatorKind::Identity: os << "I"; break;
    case OperatorKind::BeamSplitter: os << "U_T(T=" << value_ << ")"; break;
    case OperatorKind::PhaseShift: os << "exp(i n" << mode_ << " * " << value_ << ")"; break;
    case OperatorKind::Displacement:
      os << "D" << mode_ << "(" << std::abs(beta_) << " e^{" << std::arg(beta_) << "i})";
      break;
  }
  return os.str();
}

CMatrix<double> beam_splitter_apply(const CMatrix<double>& amps, double transmissivity,
                                    double phi) {
  const int dim = static_cast<int>(amps.rows());
  const double theta = std::acos(std::sqrt(std::clamp(transmissivity, 0.0, 1.0)));
  if (theta == 0.0) return amps;
  const auto basis = bs_cache().get(dim);
  CMatrix<double> out(dim, dim);
  CVector<double> v;
  for (int total = 0; total <= 2 * dim - 2; ++total) {
    const PhotonBlock& block = basis->blocks[total];
    const int k = static_cast<int>(block.values.size());
    v.resize(k);
    // D^dag v with D = diag(e^{i phi j})
    for (int j = 0; j < k; ++j) {
      const int n1 = block.lo + j;
      v(j) = amps(n1, total - n1) * std::polar(1.0, -phi * j);
    }
    CVector<double> w = block.vectors.transpose() * v;
    for (int j = 0; j < k; ++j) w(j) *= std::polar(1.0, -theta * block.values(j));
    v.noalias() = block.vectors * w;
    for (int j = 0; j < k; ++j) {
      const int n1 = block.lo + j;
      out(n1, total - n1) = v(j) * std::polar(1.0, phi * j);
    }
  }
  return out;
}

// Along each diagonal k = |m - n| the elements are
//   |<n+k|D|n>| = e^{-x/2} |beta|^k sqrt(n!/(n+k)!) L_n^(k)(x),  x = |beta|^2,
// generated by the Laguerre three-term recurrence in normalized form.
CMatrix<double> displacement_matrix(cd beta, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  const int dim = truncation + 1;
  const double x = std::norm(beta);
  const double r = std::abs(beta);
  const double phase = std::arg(beta);
  CMatrix<double> d = CMatrix<double>::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    double h0 = 0.0;
    if (k == 0) {
      h0 = std::exp(-0.5 * x);
    } else if (r > 0.0) {
      h0 = std::exp(-0.5 * x + k * std::log(r) - 0.5 * std::lgamma(k + 1.0));
    }
    if (h0 == 0.0) continue;
    const cd lower = std::polar(1.0, k * phase);                       // <n+k|D|n>
    const cd upper = std::polar(1.0, k * (std::numbers::pi - phase));  // <n|D|n+k>
    double prev = 0.0;
    double cur = h0;
    for (int n = 0; n + k < dim; ++n) {
      d(n + k, n) = cur * lower;
      if (k > 0) d(n, n + k) = cur * upper;
      const double next = ((2.0 * n + 1.0 + k - x) * cur - std::sqrt(double(n) * (n + k)) * prev) /
                          std::sqrt((n + 1.0) * (n + 1.0 + k));
      prev = cur;
      cur = next;
    }
  }
  return d;
}

OperatorOutcome apply_operator_tracked(const TwoModeState& state, const OperatorSpec& op,
                                       double max_leak) {
  const int dim = state.dim();
  switch (op.kind()) {
    case OperatorKind::Identity: return {state, 0.0};
    case OperatorKind::BeamSplitter: {
      CMatrix<double> out = beam_splitter_apply(state.amps(), op.value());
      const double leak = 1.0 - out.squaredNorm();
      return {TwoModeState(std::move(out)), leak};
    }
    case OperatorKind::PhaseShift: {
      CMatrix<double> out = state.amps();
      for (int n = 0; n < dim; ++n) {
        const cd phase = std::polar(1.0, n * op.value());
        if (op.mode() == 1) {
          out.row(n) *= phase;
        } else {
          out.col(n) *= phase;
        }
      }
      return {TwoModeState(std::move(out)), 0.0};
    }
    case OperatorKind::Displacement: {
      const auto d = disp_cache().get(op.beta(), dim);
      CMatrix<double> out = op.mode() == 1 ? CMatrix<double>(*d * state.amps())
                                           : CMatrix<double>(state.amps() * d->transpose());
      const double kept = out.squaredNorm();
      const double leak = 1.0 - kept;
      if (leak > max_leak) {
        std::ostringstream os;
        os << "displacement at truncation " << state.truncation() << " leaks " << leak
           << " of the norm";
        throw TruncationError(os.str(), kept);
      }
      return {TwoModeState(std::move(out)), leak};
    }
  }
  throw DomainError("unknown operator kind");
}

OperatorCacheStats operator_cache_stats() { return {bs_cache().size(), disp_cache().size()}; }

void clear_operator_caches() {
  bs_cache().clear();
  disp_cache().clear();
}

}  // namespace qse
