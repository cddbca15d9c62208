#pragma once

#include <array>
#include <complex>
#include <vector>

#include "glmcf/types.hpp"

namespace glmcf {

/// Polynomial exponent h: C^n -> C of the holomorphic volume form
/// Omega = e^h dz^1 ^ ... ^ dz^n. Being the exponential of an entire
/// function, Omega is holomorphic and nowhere vanishing by construction.
/// Evaluation of h, its complex gradient and its complex Hessian is exact.
struct HolomorphicExponent {
  struct Term {
    std::array<int, 3> powers{0, 0, 0};  // multi-index, entries beyond n are 0
    std::complex<double> coeff{0.0, 0.0};
  };

  int n = 1;  // complex dimension, 1 <= n <= 3
  std::vector<Term> terms;

  HolomorphicExponent() = default;
  HolomorphicExponent(int n_, std::vector<Term> terms_);

  /// Point p in R^{2n} read as (x_1, y_1, ..., x_n, y_n), z_k = x_k + i y_k.
  std::complex<double> eval(const AmbVec& p) const;

  /// dh/dz_k for k < n.
  std::array<std::complex<double>, 3> gradient(const AmbVec& p) const;

  /// d^2 h / dz_j dz_k.
  std::array<std::array<std::complex<double>, 3>, 3> hessian(const AmbVec& p) const;

  bool is_zero() const;
  int degree() const;

  /// Coefficient of the degree-one monomial z_k (zero if absent).
  std::complex<double> linear_coeff(int k) const;

  static HolomorphicExponent zero(int n);
  static HolomorphicExponent monomial(int n, std::array<int, 3> powers,
                                      std::complex<double> c);
  /// h(z) = sum_k c_k z_k
  static HolomorphicExponent linear(int n, std::array<std::complex<double>, 3> c);
};

/// Complex coordinates of an ambient point.
std::array<std::complex<double>, 3> complex_coords(const AmbVec& p, int n);

}  // namespace glmcf
