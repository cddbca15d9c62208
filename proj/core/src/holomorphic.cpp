#include "glmcf/holomorphic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glmcf {

double wrap_to_pi(double x) {
  const double two_pi = 2.0 * M_PI;
  double w = x - two_pi * std::round(x / two_pi);
  if (w <= -M_PI) w += two_pi;
  return w;
}

HolomorphicExponent::HolomorphicExponent(int n_, std::vector<Term> terms_)
    : n(n_), terms(std::move(terms_)) {
  if (n < 1 || n > 3) throw std::invalid_argument("HolomorphicExponent: n must be in 1..3");
  for (const auto& t : terms) {
    for (int k = n; k < 3; ++k) {
      if (t.powers[k] != 0)
        throw std::invalid_argument("HolomorphicExponent: multi-index exceeds dimension");
    }
    for (int k = 0; k < 3; ++k) {
      if (t.powers[k] < 0)
        throw std::invalid_argument("HolomorphicExponent: negative power");
    }
  }
}

std::array<std::complex<double>, 3> complex_coords(const AmbVec& p, int n) {
  std::array<std::complex<double>, 3> z{};
  for (int k = 0; k < n; ++k) z[k] = {p[2 * k], p[2 * k + 1]};
  return z;
}

namespace {

std::complex<double> ipow(std::complex<double> z, int e) {
  std::complex<double> r{1.0, 0.0};
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

}  // namespace

std::complex<double> HolomorphicExponent::eval(const AmbVec& p) const {
  const auto z = complex_coords(p, n);
  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : terms) {
    std::complex<double> m = t.coeff;
    for (int k = 0; k < n; ++k) m *= ipow(z[k], t.powers[k]);
    acc += m;
  }
  return acc;
}

std::array<std::complex<double>, 3> HolomorphicExponent::gradient(const AmbVec& p) const {
  const auto z = complex_coords(p, n);
  std::array<std::complex<double>, 3> g{};
  for (const auto& t : terms) {
    for (int k = 0; k < n; ++k) {
      if (t.powers[k] == 0) continue;
      std::complex<double> m = t.coeff * double(t.powers[k]) * ipow(z[k], t.powers[k] - 1);
      for (int j = 0; j < n; ++j) {
        if (j != k) m *= ipow(z[j], t.powers[j]);
      }
      g[k] += m;
    }
  }
  return g;
}

std::array<std::array<std::complex<double>, 3>, 3> HolomorphicExponent::hessian(
    const AmbVec& p) const {
  const auto z = complex_coords(p, n);
  std::array<std::array<std::complex<double>, 3>, 3> h{};
  for (const auto& t : terms) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        auto pw = t.powers;
        double scale = 1.0;
        // differentiate in z_a then z_b
        if (pw[a] == 0) continue;
        scale *= pw[a];
        pw[a] -= 1;
        if (pw[b] == 0) continue;
        scale *= pw[b];
        pw[b] -= 1;
        std::complex<double> m = t.coeff * scale;
        for (int j = 0; j < n; ++j) m *= ipow(z[j], pw[j]);
        h[a][b] += m;
      }
    }
  }
  return h;
}

bool HolomorphicExponent::is_zero() const {
  for (const auto& t : terms) {
    if (t.coeff != std::complex<double>{0.0, 0.0}) return false;
  }
  return true;
}

int HolomorphicExponent::degree() const {
  int d = 0;
  for (const auto& t : terms) {
    if (t.coeff == std::complex<double>{0.0, 0.0}) continue;
    d = std::max(d, t.powers[0] + t.powers[1] + t.powers[2]);
  }
  return d;
}

std::complex<double> HolomorphicExponent::linear_coeff(int k) const {
  std::complex<double> c{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.powers[k] != 1) continue;
    int total = t.powers[0] + t.powers[1] + t.powers[2];
    if (total == 1) c += t.coeff;
  }
  return c;
}

HolomorphicExponent HolomorphicExponent::zero(int n) { return HolomorphicExponent(n, {}); }

HolomorphicExponent HolomorphicExponent::monomial(int n, std::array<int, 3> powers,
                                                  std::complex<double> c) {
  return HolomorphicExponent(n, {Term{powers, c}});
}

HolomorphicExponent HolomorphicExponent::linear(int n,
                                                std::array<std::complex<double>, 3> c) {
  std::vector<Term> terms;
  for (int k = 0; k < n; ++k) {
    if (c[k] == std::complex<double>{0.0, 0.0}) continue;
    std::array<int, 3> pw{0, 0, 0};
    pw[k] = 1;
    terms.push_back(Term{pw, c[k]});
  }
  return HolomorphicExponent(n, std::move(terms));
}

}  // namespace glmcf
