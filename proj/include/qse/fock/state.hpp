#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

#include "qse/errors.hpp"

namespace qse {

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Pure single-mode state in the Fock basis |0>..|truncation>.
///
/// Construction always normalizes; a zero vector is rejected. The amplitude
/// vector length is truncation + 1.
template <typename Real>
class BasicSingleModeState {
 public:
  using Scalar = std::complex<Real>;
  using Vector = CVector<Real>;

  BasicSingleModeState() : amps_(Vector::Zero(1)) { amps_(0) = Scalar(1); }

  explicit BasicSingleModeState(Vector amps) : amps_(std::move(amps)) {
    if (amps_.size() == 0) throw ShapeError("single-mode state needs at least one amplitude");
    const Real n = amps_.norm();
    if (!(n > Real(0))) throw DomainError("cannot normalize a zero single-mode state");
    amps_ /= n;
  }

  static BasicSingleModeState fock(int n, int truncation) {
    if (n < 0 || n > truncation) throw DomainError("Fock index outside truncation");
    Vector v = Vector::Zero(truncation + 1);
    v(n) = Scalar(1);
    return BasicSingleModeState(std::move(v));
  }

  static BasicSingleModeState vacuum(int truncation) { return fock(0, truncation); }

  int truncation() const { return static_cast<int>(amps_.size()) - 1; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  Scalar operator[](int n) const { return amps_(n); }

  /// Copy at a different truncation: zero-pads when growing, drops and
  /// renormalizes when shrinking.
  BasicSingleModeState resized(int truncation) const {
    Vector v = Vector::Zero(truncation + 1);
    const int keep = std::min(dim(), truncation + 1);
    v.head(keep) = amps_.head(keep);
    return BasicSingleModeState(std::move(v));
  }

 private:
  Vector amps_;
};

/// Pure two-mode state; amps(n1, n2) is the amplitude of |n1> (x) |n2>.
/// Both modes share one truncation.
template <typename Real>
class BasicTwoModeState {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = CMatrix<Real>;

  BasicTwoModeState() : amps_(Matrix::Zero(1, 1)) { amps_(0, 0) = Scalar(1); }

  explicit BasicTwoModeState(Matrix amps) : amps_(std::move(amps)) {
    if (amps_.rows() != amps_.cols() || amps_.rows() == 0)
      throw ShapeError("two-mode amplitude array must be square and non-empty");
    const Real n = amps_.norm();
    if (!(n > Real(0))) throw DomainError("cannot normalize a zero two-mode state");
    amps_ /= n;
  }

  int truncation() const { return static_cast<int>(amps_.rows()) - 1; }
  int dim() const { return static_cast<int>(amps_.rows()); }
  const Matrix& amps() const { return amps_; }
  Scalar operator()(int n1, int n2) const { return amps_(n1, n2); }

 private:
  Matrix amps_;
};

using SingleModeState = BasicSingleModeState<double>;
using TwoModeState = BasicTwoModeState<double>;

template <typename Real>
BasicTwoModeState<Real> tensor(const BasicSingleModeState<Real>& a,
                               const BasicSingleModeState<Real>& b) {
  if (a.truncation() != b.truncation()) throw ShapeError("tensor: truncation mismatch");
  return BasicTwoModeState<Real>(a.amps() * b.amps().transpose());
}

}  // namespace qse
