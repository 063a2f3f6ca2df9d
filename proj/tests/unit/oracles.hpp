#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

// Dense reference constructions for checking the fast paths.
namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat annihilation(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

inline cd ipow(cd x, int k) {
  cd r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

inline Mat identity(int dim) { return Mat::Identity(dim, dim); }

inline Mat expm(const Mat& m) { return m.exp(); }

// Two-mode operators act on psi(n1 * dim + n2).
inline Vec flatten(const Mat& amps) {
  const int d = static_cast<int>(amps.rows());
  Vec v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j) = amps(i, j);
  return v;
}

inline Mat unflatten(const Vec& v, int d) {
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = v(i * d + j);
  return m;
}

inline Mat beam_splitter(int dim, double transmissivity, double phi) {
  const Mat a = Eigen::kroneckerProduct(annihilation(dim), identity(dim)).eval();
  const Mat b = Eigen::kroneckerProduct(identity(dim), annihilation(dim)).eval();
  const double theta = std::acos(std::sqrt(transmissivity));
  const Mat g = std::polar(1.0, phi) * a.adjoint() * b + std::polar(1.0, -phi) * a * b.adjoint();
  return expm(cd(0, -theta) * g);
}

// exp((z* a^2 - z a^dag^2) / 2)
inline Mat squeeze(int dim, cd z) {
  const Mat a = annihilation(dim);
  return expm(0.5 * (std::conj(z) * a * a - z * a.adjoint() * a.adjoint()));
}

inline Mat displace(int dim, cd beta) {
  const Mat a = annihilation(dim);
  return expm(beta * a.adjoint() - std::conj(beta) * a);
}

// <m|D(beta)|n> from the associated Laguerre closed form.
inline cd displacement_element(cd beta, int m, int n) {
  const double x = std::norm(beta);
  const int lo = std::min(m, n);
  const int k = std::abs(m - n);
  const double mag = std::exp(0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)) - 0.5 * x) *
                     std::assoc_laguerre(unsigned(lo), unsigned(k), x);
  const cd base = m >= n ? beta : -std::conj(beta);
  return mag * ipow(base, k);
}

inline Vec coherent(cd alpha, int dim) {
  Vec v(dim);
  for (int n = 0; n < dim; ++n)
    v(n) = std::exp(-0.5 * std::norm(alpha) - 0.5 * std::lgamma(n + 1.0)) * ipow(alpha, n);
  return v;
}

}  // namespace oracle
