#include "glmcf/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace glmcf {

std::string to_string(NegativeControl c) {
  switch (c) {
    case NegativeControl::None: return "none";
    case NegativeControl::QuarterNormSq: return "quarter_norm_sq";
    case NegativeControl::SinX2: return "sin_x2";
  }
  return "none";
}

std::optional<NegativeControl> negative_control_from_string(const std::string& name) {
  if (name == "quarter_norm_sq") return NegativeControl::QuarterNormSq;
  if (name == "sin_x2") return NegativeControl::SinX2;
  if (name == "none") return NegativeControl::None;
  return std::nullopt;
}

AmbientStructure AmbientStructure::flat(int n) {
  AmbientStructure a;
  a.n = n;
  a.exponent = HolomorphicExponent::zero(n);
  return a;
}

AmbientStructure AmbientStructure::with_exponent(HolomorphicExponent h) {
  AmbientStructure a;
  a.n = h.n;
  a.exponent = std::move(h);
  return a;
}

AmbientStructure AmbientStructure::negative(int n, NegativeControl c, HolomorphicExponent h) {
  if (c == NegativeControl::SinX2 && n < 2)
    throw std::invalid_argument("negative control sin_x2 requires n >= 2");
  AmbientStructure a;
  a.n = n;
  a.exponent = h.terms.empty() ? HolomorphicExponent::zero(n) : std::move(h);
  a.control = c;
  return a;
}

AmbVec apply_J(const AmbVec& v) {
  AmbVec w(v.size());
  for (int k = 0; 2 * k + 1 < v.size(); ++k) {
    w[2 * k] = -v[2 * k + 1];
    w[2 * k + 1] = v[2 * k];
  }
  return w;
}

double omega_bar(const AmbVec& x, const AmbVec& y) {
  double s = 0.0;
  for (int k = 0; 2 * k + 1 < x.size(); ++k)
    s += x[2 * k] * y[2 * k + 1] - x[2 * k + 1] * y[2 * k];
  return s;
}

double psi(const AmbientStructure& a, const AmbVec& p) {
  switch (a.control) {
    case NegativeControl::None:
      return a.exponent.eval(p).real() / double(a.n);
    case NegativeControl::QuarterNormSq:
      return 0.25 * p.squaredNorm();
    case NegativeControl::SinX2:
      return std::sin(p[2]);
  }
  return 0.0;
}

AmbVec grad_psi(const AmbientStructure& a, const AmbVec& p) {
  AmbVec g = AmbVec::Zero(2 * a.n);
  switch (a.control) {
    case NegativeControl::None: {
      // Re of a holomorphic function has gradient (Re h'_k, -Im h'_k)
      // per complex coordinate (Cauchy-Riemann).
      const auto dh = a.exponent.gradient(p);
      for (int k = 0; k < a.n; ++k) {
        g[2 * k] = dh[k].real() / double(a.n);
        g[2 * k + 1] = -dh[k].imag() / double(a.n);
      }
      return g;
    }
    case NegativeControl::QuarterNormSq:
      return 0.5 * p;
    case NegativeControl::SinX2:
      g[2] = std::cos(p[2]);
      return g;
  }
  return g;
}

double dc_psi(const AmbientStructure& a, const AmbVec& p, const AmbVec& X) {
  return -grad_psi(a, p).dot(apply_J(X));
}

double ddc_psi_residual(const AmbientStructure& a, const AmbVec& p, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("ddc_psi_residual: scale must be > 0");
  const int d = 2 * a.n;
  // beta_b(q) = d^c psi(e_b) at q; residual entries are
  // (d beta)(e_a, e_b) = D_a beta_b - D_b beta_a by centered differences.
  auto beta = [&](const AmbVec& q, int b) {
    AmbVec eb = AmbVec::Zero(d);
    eb[b] = 1.0;
    return dc_psi(a, q, eb);
  };
  double r = 0.0;
  for (int axis = 0; axis < d; ++axis) {
    for (int b = axis + 1; b < d; ++b) {
      AmbVec pa = p, ma = p, pb = p, mb = p;
      pa[axis] += scale;
      ma[axis] -= scale;
      pb[b] += scale;
      mb[b] -= scale;
      const double dab = (beta(pa, b) - beta(ma, b)) / (2.0 * scale) -
                         (beta(pb, axis) - beta(mb, axis)) / (2.0 * scale);
      r = std::max(r, std::abs(dab));
    }
  }
  return r;
}

double ddc_psi_exact(const AmbientStructure& a, const AmbVec& p, const AmbVec& X,
                     const AmbVec& Y) {
  switch (a.control) {
    case NegativeControl::None:
      return 0.0;  // pluriharmonic
    case NegativeControl::QuarterNormSq:
      return omega_bar(X, Y);
    case NegativeControl::SinX2:
      // -sin(x_2) dx_2 ^ dy_2
      return -std::sin(p[2]) * (X[2] * Y[3] - X[3] * Y[2]);
  }
  return 0.0;
}

double conformal_factor(const AmbientStructure& a, const AmbVec& p, ConformalWeight w) {
  const double ps = psi(a, p);
  switch (w) {
    case ConformalWeight::Tilde: return std::exp(2.0 * ps);
    case ConformalWeight::Hat: return std::exp(2.0 * a.n / double(a.n + 2) * ps);
  }
  return 1.0;
}

double volume_density(const AmbientStructure& a, const AmbVec& p, VolumeWeight w) {
  switch (w) {
    case VolumeWeight::Bar: return 1.0;
    case VolumeWeight::Tilde: return std::exp(double(a.n) * psi(a, p));
    case VolumeWeight::Hat:
      return std::exp(double(a.n) * double(a.n) / double(a.n + 2) * psi(a, p));
  }
  return 1.0;
}

double im_h(const AmbientStructure& a, const AmbVec& p) {
  if (a.exponent.is_zero()) return 0.0;
  return a.exponent.eval(p).imag();
}

}  // namespace glmcf
