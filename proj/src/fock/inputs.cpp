#include "qse/fock/inputs.hpp"

#include <cmath>
#include <sstream>

namespace qse {
namespace {

using cd = std::complex<double>;

void check_truncation(int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
}

void check_leak(const CVector<double>& series, int truncation, double max_leak, const char* what) {
  const double kept = series.squaredNorm();
  if (kept < 1.0 - max_leak) {
    std::ostringstream os;
    os << what << ": truncation " << truncation << " keeps only " << kept << " of the norm";
    throw TruncationError(os.str(), kept);
  }
}

}  // namespace

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::Fock: return "fock";
    case InputKind::Coherent: return "coherent";
    case InputKind::SqueezedVacuum: return "squeezed";
    case InputKind::TwoModeSqueezedVacuum: return "tmsv";
  }
  return "?";
}

InputSpec InputSpec::fock(int n) {
  if (n < 0 || n > kMaxInputFock) throw DomainError("Fock input must have n in {0,1,2}");
  return InputSpec(InputKind::Fock, n, {});
}

InputSpec InputSpec::coherent(cd alpha) {
  if (!within_bound(std::abs(alpha), kMaxCoherentAmplitude))
    throw DomainError("coherent amplitude exceeds |alpha| <= 4");
  return InputSpec(InputKind::Coherent, 0, alpha);
}

InputSpec InputSpec::squeezed_vacuum(cd z) {
  if (!within_bound(std::abs(z), kMaxInputSqueezing)) throw DomainError("squeezing exceeds |z| <= 1.3");
  return InputSpec(InputKind::SqueezedVacuum, 0, z);
}

InputSpec InputSpec::two_mode_squeezed_vacuum(cd z) {
  if (!within_bound(std::abs(z), kMaxInputSqueezing)) throw DomainError("TMSV squeezing exceeds |z| <= 1.3");
  return InputSpec(InputKind::TwoModeSqueezedVacuum, 0, z);
}

std::string InputSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case InputKind::Fock: os << "|" << n_ << ">"; break;
    case InputKind::Coherent:
      os << "coherent |alpha=" << std::abs(param_) << " e^{" << std::arg(param_) << "i}>";
      break;
    case InputKind::SqueezedVacuum:
      os << "squeezed |z=" << std::abs(param_) << " e^{" << std::arg(param_) << "i}>";
      break;
    case InputKind::TwoModeSqueezedVacuum:
      os << "TMSV |z=" << std::abs(param_) << " e^{" << std::arg(param_) << "i}>_12";
      break;
  }
  return os.str();
}

CVector<double> coherent_series(cd alpha, int truncation) {
  check_truncation(truncation);
  CVector<double> c(truncation + 1);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= truncation; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  return c;
}

// S(z)|0> with S(z) = exp[(z* a^2 - z a^dag^2)/2]: only even n populated,
// c_{2m} = (-e^{i phi} tanh r)^m sqrt((2m)!) / (2^m m! sqrt(cosh r)).
CVector<double> squeezed_vacuum_series(cd z, int truncation) {
  check_truncation(truncation);
  const double r = std::abs(z);
  const cd ratio = -std::polar(std::tanh(r), std::arg(z));
  CVector<double> c = CVector<double>::Zero(truncation + 1);
  c(0) = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 2; n <= truncation; n += 2) {
    c(n) = c(n - 2) * ratio * std::sqrt(double(n - 1) / double(n));
  }
  return c;
}

SingleModeState build_single_mode(const InputSpec& spec, int truncation, double max_leak) {
  check_truncation(truncation);
  switch (spec.kind()) {
    case InputKind::Fock:
      if (spec.photons() > truncation) {
        throw TruncationError("Fock input does not fit in the truncation", 0.0);
      }
      return SingleModeState::fock(spec.photons(), truncation);
    case InputKind::Coherent: {
      auto c = coherent_series(spec.param(), truncation);
      check_leak(c, truncation, max_leak, "coherent input");
      return SingleModeState(std::move(c));
    }
    case InputKind::SqueezedVacuum: {
      auto c = squeezed_vacuum_series(spec.param(), truncation);
      check_leak(c, truncation, max_leak, "squeezed input");
      return SingleModeState(std::move(c));
    }
    case InputKind::TwoModeSqueezedVacuum: break;
  }
  throw ShapeError("TMSV is a two-mode input");
}

// S12(z)|0,0> with S12(z) = exp(z* ab - z a^dag b^dag):
// c_n = (-e^{i phi} tanh r)^n / cosh r on |n,n>.
TwoModeState build_two_mode(const InputSpec& spec, int truncation, double max_leak) {
  check_truncation(truncation);
  if (!spec.is_two_mode()) throw ShapeError("only TMSV is a two-mode input");
  const double r = std::abs(spec.param());
  const cd ratio = -std::polar(std::tanh(r), std::arg(spec.param()));
  CVector<double> diag(truncation + 1);
  diag(0) = 1.0 / std::cosh(r);
  for (int n = 1; n <= truncation; ++n) diag(n) = diag(n - 1) * ratio;
  check_leak(diag, truncation, max_leak, "TMSV input");
  return TwoModeState(diag.asDiagonal().toDenseMatrix());
}

InputState build_input(const InputSpec& spec, int truncation, double max_leak) {
  if (spec.is_two_mode()) return build_two_mode(spec, truncation, max_leak);
  return build_single_mode(spec, truncation, max_leak);
}

}  // namespace qse
