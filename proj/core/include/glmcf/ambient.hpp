#pragma once

#include <optional>
#include <string>

#include "glmcf/holomorphic.hpp"
#include "glmcf/types.hpp"

namespace glmcf {

/// Built-in catalog of non-pluriharmonic potentials used as negative
/// controls. With one of these installed the structure violates the
/// almost Einstein condition on purpose, so that Lagrangian preservation
/// can be watched failing.
///
///  - quarter_norm_sq: psi = |p|^2 / 4, dd^c psi equals the standard
///    symplectic form (isotropic; useful for point probes).
///  - sin_x2: psi = sin(Re z_2), dd^c psi = -sin(x_2) dx_2 ^ dy_2
///    (anisotropic and compatible with toroidal states, whose deck
///    translations shift Re z_k by full periods). Requires n >= 2.
enum class NegativeControl { None, QuarterNormSq, SinX2 };

std::string to_string(NegativeControl c);
std::optional<NegativeControl> negative_control_from_string(const std::string& name);

/// Flat C^n with the standard complex structure J, symplectic form
/// omega_bar = sum dx_k ^ dy_k, flat metric, and holomorphic volume form
/// Omega = e^h dz. Sign conventions, fixed once for the whole project:
///   J(d/dx_k) = d/dy_k,  g(JX, Y) = omega_bar(X, Y),  d^c f(X) = -df(JX).
/// The potential psi = Re h / n is pluriharmonic, so the Ricci form
/// satisfies rho = lambda*omega + n dd^c psi with lambda = 0 identically.
struct AmbientStructure {
  int n = 1;
  HolomorphicExponent exponent;  // Omega = exp(h) dz
  double lambda = 0.0;           // Einstein constant; only 0 is realized here
  NegativeControl control = NegativeControl::None;

  bool admissible() const { return control == NegativeControl::None; }

  static AmbientStructure flat(int n);
  static AmbientStructure with_exponent(HolomorphicExponent h);
  static AmbientStructure negative(int n, NegativeControl c,
                                   HolomorphicExponent h = HolomorphicExponent{});
};

/// Complex structure applied to an ambient vector.
AmbVec apply_J(const AmbVec& v);

/// omega_bar(X, Y) = sum_k (X_{x_k} Y_{y_k} - X_{y_k} Y_{x_k}).
double omega_bar(const AmbVec& x, const AmbVec& y);

/// Conformal potential. Admissible mode: Re h(p) / n. Negative-control
/// mode: the catalog function.
double psi(const AmbientStructure& a, const AmbVec& p);

/// Gradient of psi with respect to the flat metric, in closed form.
AmbVec grad_psi(const AmbientStructure& a, const AmbVec& p);

/// d^c psi(X) = -<grad psi, JX>.
double dc_psi(const AmbientStructure& a, const AmbVec& p, const AmbVec& X);

/// Finite-difference estimate of the max-norm of dd^c psi at p, using a
/// centered stencil of width `scale` on the one-form d^c psi. Admissible
/// structures return O(scale^2) plus rounding.
double ddc_psi_residual(const AmbientStructure& a, const AmbVec& p, double scale);

/// Exact dd^c psi contracted with two ambient vectors (closed form; zero
/// in admissible mode). Used to pull the Ricci form back onto states.
double ddc_psi_exact(const AmbientStructure& a, const AmbVec& p, const AmbVec& X,
                     const AmbVec& Y);

enum class ConformalWeight {
  Tilde,  // e^{2 psi}
  Hat     // e^{2n/(n+2) psi}
};

double conformal_factor(const AmbientStructure& a, const AmbVec& p, ConformalWeight w);

enum class VolumeWeight { Bar, Tilde, Hat };

/// Density multiplier for the induced volume element of the rescaled
/// metrics: 1, e^{n psi} or e^{n^2/(n+2) psi}.
double volume_density(const AmbientStructure& a, const AmbVec& p, VolumeWeight w);

/// Im h(p); zero when the exponent vanishes.
double im_h(const AmbientStructure& a, const AmbVec& p);

}  // namespace glmcf
