#include "qse/targets/targets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qse/fock/inputs.hpp"

namespace qse {
namespace {

using cd = std::complex<double>;

constexpr double kVerificationMaxAlpha = 2.5;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

// Eigensystem of the exact q^3 matrix elements on a padded space.
struct CubicBasis {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
};

std::shared_ptr<const CubicBasis> cubic_basis(int dim) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CubicBasis>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;
  const int big = dim + 3;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(big, big);
  for (int n = 1; n < big; ++n) {
    q(n - 1, n) = q(n, n - 1) = std::sqrt(double(n) / 2.0);
  }
  const Eigen::MatrixXd q3 = (q * q * q).topLeftCorner(dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q3);
  auto basis = std::make_shared<const CubicBasis>(CubicBasis{solver.eigenvectors(), solver.eigenvalues()});
  cache.emplace(dim, basis);
  return basis;
}

int cubic_padding(int truncation) { return std::max(20, truncation / 2); }

}  // namespace

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::Cat: return "cat";
    case TargetKind::SqueezedCat: return "squeezed_cat";
    case TargetKind::Zombie: return "zombie";
    case TargetKind::ON: return "on";
    case TargetKind::CubicPhase: return "cubic_phase";
  }
  return "?";
}

std::optional<TargetKind> parse_target_kind(const std::string& name) {
  const std::string s = lower(name);
  for (TargetKind k : kAllTargetKinds) {
    if (s == to_string(k)) return k;
  }
  if (s == "squeezedcat" || s == "sqcat") return TargetKind::SqueezedCat;
  if (s == "cubic" || s == "cubicphase") return TargetKind::CubicPhase;
  return std::nullopt;
}

TargetParams TargetParams::cat(cd alpha, double theta) {
  TargetParams p;
  p.alpha = alpha;
  p.theta = theta;
  return p;
}

TargetParams TargetParams::squeezed_cat(cd alpha, double theta, cd z) {
  TargetParams p = cat(alpha, theta);
  p.z = z;
  return p;
}

TargetParams TargetParams::zombie(cd alpha) {
  TargetParams p;
  p.alpha = alpha;
  return p;
}

TargetParams TargetParams::on(int n, double delta) {
  TargetParams p;
  p.n = n;
  p.delta = delta;
  return p;
}

TargetParams TargetParams::cubic_phase(double gamma, double z) {
  TargetParams p;
  p.gamma = gamma;
  p.z = z;
  return p;
}

std::string TargetParams::describe(TargetKind kind) const {
  std::ostringstream os;
  auto c = [&os](cd v) { os << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i"; };
  switch (kind) {
    case TargetKind::Cat:
      os << "alpha=";
      c(alpha);
      os << " theta=" << theta;
      break;
    case TargetKind::SqueezedCat:
      os << "alpha=";
      c(alpha);
      os << " theta=" << theta << " z=";
      c(z);
      break;
    case TargetKind::Zombie:
      os << "alpha=";
      c(alpha);
      break;
    case TargetKind::ON: os << "n=" << n << " delta=" << delta; break;
    case TargetKind::CubicPhase: os << "gamma=" << gamma << " z=" << z.real(); break;
  }
  return os.str();
}

TargetFamily TargetFamily::search(TargetKind kind) {
  TargetFamily f;
  f.kind = kind;
  return f;
}

TargetFamily TargetFamily::verification(TargetKind kind) {
  TargetFamily f;
  f.kind = kind;
  f.max_alpha = kVerificationMaxAlpha;
  f.min_delta = -1.0;
  f.min_cubic_z = -1.4;
  return f;
}

void TargetFamily::check(const TargetParams& p) const {
  auto finite = [](cd v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  switch (kind) {
    case TargetKind::SqueezedCat:
      require(finite(p.z) && std::abs(p.z) <= max_squeezing, "squeezed cat: |z| out of range");
      [[fallthrough]];
    case TargetKind::Cat:
      require(finite(p.alpha) && std::abs(p.alpha) >= min_alpha - 1e-12 && std::abs(p.alpha) <= max_alpha,
              "cat: |alpha| out of range");
      require(std::isfinite(p.theta), "cat: theta must be finite");
      break;
    case TargetKind::Zombie:
      require(finite(p.alpha) && std::abs(p.alpha) >= min_alpha - 1e-12 && std::abs(p.alpha) <= max_alpha,
              "zombie: |alpha| out of range");
      break;
    case TargetKind::ON:
      require(p.n >= min_n && p.n <= max_n, "ON: n out of range");
      require(p.delta >= min_delta && p.delta <= max_delta, "ON: delta out of range");
      break;
    case TargetKind::CubicPhase:
      require(p.gamma >= 0.0 && p.gamma <= max_gamma, "cubic phase: gamma out of range");
      require(p.z.real() >= min_cubic_z && p.z.real() <= max_cubic_z,
              "cubic phase: z out of range");
      break;
  }
}

CVector<double> squeezed_coherent_series(cd alpha, cd z, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  const double r = std::abs(z);
  const double mu = std::cosh(r);
  const cd nu = std::polar(std::sinh(r), std::arg(z));
  const cd g = mu * alpha - nu * std::conj(alpha);
  // The state is annihilated by mu (a - g) + nu (a^dag - g*).
  const cd beta = mu * g + nu * std::conj(g);
  CVector<double> c(truncation + 1);
  c(0) = std::exp(-0.5 * std::norm(g) - nu * std::conj(g) * std::conj(g) / (2.0 * mu)) / std::sqrt(mu);
  if (truncation >= 1) c(1) = beta * c(0) / mu;
  for (int n = 1; n < truncation; ++n) {
    c(n + 1) = (beta * c(n) - nu * std::sqrt(double(n)) * c(n - 1)) / (mu * std::sqrt(double(n + 1)));
  }
  return c;
}

CubicPhaseResult cubic_phase_state(double gamma, double z, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  const int padded = truncation + 1 + cubic_padding(truncation);
  const auto basis = cubic_basis(padded);
  const CVector<double> sq = squeezed_vacuum_series(cd(z, 0.0), padded - 1);
  CVector<double> coeffs = basis->vectors.transpose() * sq;
  for (int k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::polar(1.0, gamma * basis->values(k));
  const CVector<double> full = basis->vectors * coeffs;
  const double total = full.squaredNorm();
  CVector<double> kept = full.head(truncation + 1);
  const double loss = 1.0 - kept.squaredNorm() / total;
  return {SingleModeState(std::move(kept)), loss};
}

SingleModeState make_target(const TargetFamily& family, const TargetParams& p, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  family.check(p);
  switch (family.kind) {
    case TargetKind::Cat:
      return SingleModeState(coherent_series(p.alpha, truncation) +
                             std::polar(1.0, p.theta) * coherent_series(-p.alpha, truncation));
    case TargetKind::SqueezedCat:
      return SingleModeState(squeezed_coherent_series(p.alpha, p.z, truncation) +
                             std::polar(1.0, p.theta) *
                                 squeezed_coherent_series(-p.alpha, p.z, truncation));
    case TargetKind::Zombie: {
      const cd w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
      return SingleModeState(coherent_series(p.alpha, truncation) +
                             coherent_series(w * p.alpha, truncation) +
                             coherent_series(w * w * p.alpha, truncation));
    }
    case TargetKind::ON: {
      if (p.n > truncation) throw DomainError("ON: n exceeds the truncation");
      CVector<double> v = CVector<double>::Zero(truncation + 1);
      v(0) = 1.0;
      v(p.n) += p.delta;
      return SingleModeState(std::move(v));
    }
    case TargetKind::CubicPhase: return cubic_phase_state(p.gamma, p.z.real(), truncation).state;
  }
  throw DomainError("unknown target kind");
}

SingleModeState make_target(TargetKind kind, const TargetParams& params, int truncation) {
  return make_target(TargetFamily::verification(kind), params, truncation);
}

}  // namespace qse
