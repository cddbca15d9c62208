#include "glmcf/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glmcf {

ImmersionPatch::ImmersionPatch(PeriodicGrid g, int n) : grid(g), ambient_n(n) {
  if (n < 1 || n > 3) throw std::invalid_argument("ImmersionPatch: ambient n must be 1..3");
  F.setZero(2 * n, grid.num_nodes());
  for (auto& w : wrap) w = AmbVec::Zero(2 * n);
}

AmbVec ImmersionPatch::neighbor(int idx, int axis, int by) const {
  int wc = 0;
  const int j = grid.shifted(idx, axis, by, wc);
  AmbVec v = F.col(j);
  if (wc != 0) v += double(wc) * wrap[axis];
  return v;
}

AmbVec ImmersionPatch::neighbor2(int idx, int a, int by_a, int b, int by_b) const {
  int wa = 0, wb = 0;
  int j = grid.shifted(idx, a, by_a, wa);
  j = grid.shifted(j, b, by_b, wb);
  AmbVec v = F.col(j);
  if (wa != 0) v += double(wa) * wrap[a];
  if (wb != 0) v += double(wb) * wrap[b];
  return v;
}

AmbVec ImmersionPatch::d1(int idx, int axis) const {
  return (neighbor(idx, axis, +1) - neighbor(idx, axis, -1)) / (2.0 * grid.spacing[axis]);
}

AmbVec ImmersionPatch::d2(int idx, int a, int b) const {
  if (a == b) {
    const double h2 = grid.spacing[a] * grid.spacing[a];
    return (neighbor(idx, a, +1) - 2.0 * AmbVec(F.col(idx)) + neighbor(idx, a, -1)) / h2;
  }
  const double den = 4.0 * grid.spacing[a] * grid.spacing[b];
  return (neighbor2(idx, a, +1, b, +1) - neighbor2(idx, a, +1, b, -1) -
          neighbor2(idx, a, -1, b, +1) + neighbor2(idx, a, -1, b, -1)) /
         den;
}

double ImmersionPatch::min_node_spacing() const {
  double m = std::numeric_limits<double>::max();
  const int nn = num_nodes();
  for (int j = 0; j < nn; ++j) {
    for (int axis = 0; axis < grid.dim; ++axis) {
      const double d = (neighbor(j, axis, +1) - AmbVec(F.col(j))).norm();
      m = std::min(m, d);
    }
  }
  return m;
}

CurveState CurveState::closed(const std::vector<Eigen::Vector2d>& points) {
  return wrapped(points, 1.0 / double(points.size()), Eigen::Vector2d::Zero());
}

CurveState CurveState::wrapped(const std::vector<Eigen::Vector2d>& points, double spacing,
                               const Eigen::Vector2d& wrap) {
  const int m = int(points.size());
  if (m < 8) throw std::invalid_argument("CurveState: need at least 8 points");
  ImmersionPatch p(PeriodicGrid::line(m, spacing), 1);
  for (int j = 0; j < m; ++j) p.F.col(j) = points[j];
  p.wrap[0] = AmbVec(wrap);
  for (int j = 0; j < m; ++j) {
    if ((p.neighbor(j, 0, +1) - AmbVec(p.F.col(j))).norm() == 0.0)
      throw std::invalid_argument("CurveState: consecutive points coincide");
  }
  return CurveState(std::move(p));
}

GraphState::GraphState(int n, const std::array<int, 3>& size) {
  if (n < 1 || n > 3) throw std::invalid_argument("GraphState: n must be 1..3");
  std::array<double, 3> sp{1.0, 1.0, 1.0};
  for (int k = 0; k < n; ++k) sp[k] = 2.0 * M_PI / double(size[k]);
  grid = PeriodicGrid::box(n, size, sp);
  u.setZero(grid.num_nodes());
  slope = DimVec::Zero(n);
}

DimVec GraphState::coords(int idx) const {
  const auto c = grid.unflatten(idx);
  DimVec x(grid.dim);
  for (int k = 0; k < grid.dim; ++k) x[k] = c[k] * grid.spacing[k];
  return x;
}

double GraphState::u_total(int idx) const { return u[idx] + slope.dot(coords(idx)); }

DimVec GraphState::grad_u(int idx) const {
  DimVec g(grid.dim);
  for (int k = 0; k < grid.dim; ++k) {
    int w = 0;
    const int jp = grid.shifted(idx, k, +1, w);
    const int jm = grid.shifted(idx, k, -1, w);
    g[k] = (u[jp] - u[jm]) / (2.0 * grid.spacing[k]) + slope[k];
  }
  return g;
}

DimMat GraphState::hess_u(int idx) const {
  const int n = grid.dim;
  DimMat h(n, n);
  int w = 0;
  for (int a = 0; a < n; ++a) {
    const int jp = grid.shifted(idx, a, +1, w);
    const int jm = grid.shifted(idx, a, -1, w);
    h(a, a) = (u[jp] - 2.0 * u[idx] + u[jm]) / (grid.spacing[a] * grid.spacing[a]);
    for (int b = a + 1; b < n; ++b) {
      const int jpp = grid.shifted(jp, b, +1, w);
      const int jpm = grid.shifted(jp, b, -1, w);
      const int jmp = grid.shifted(jm, b, +1, w);
      const int jmm = grid.shifted(jm, b, -1, w);
      h(a, b) = (u[jpp] - u[jpm] - u[jmp] + u[jmm]) /
                (4.0 * grid.spacing[a] * grid.spacing[b]);
      h(b, a) = h(a, b);
    }
  }
  return h;
}

double GraphState::max_hess_eigenvalue() const {
  double m = 0.0;
  const int nn = grid.num_nodes();
  for (int j = 0; j < nn; ++j) {
    const DimVec ev = symmetric_eigenvalues(hess_u(j));
    for (int k = 0; k < ev.size(); ++k) m = std::max(m, std::abs(ev[k]));
  }
  return m;
}

ImmersionPatch GraphState::immersion() const {
  const int n = grid.dim;
  ImmersionPatch p(grid, n);
  const int nn = grid.num_nodes();
  for (int j = 0; j < nn; ++j) {
    const DimVec x = coords(j);
    const DimVec g = grad_u(j);
    for (int k = 0; k < n; ++k) {
      p.F(2 * k, j) = x[k];
      p.F(2 * k + 1, j) = g[k];
    }
  }
  for (int k = 0; k < n; ++k) {
    AmbVec w = AmbVec::Zero(2 * n);
    w[2 * k] = 2.0 * M_PI;  // grad u is periodic, only the base point wraps
    p.wrap[k] = w;
  }
  return p;
}

MeshState GraphState::sample_mesh() const {
  if (grid.dim != 2) throw std::invalid_argument("sample_mesh: graph dimension must be 2");
  return MeshState(immersion());
}

CurveState GraphState::sample_curve() const {
  if (grid.dim != 1) throw std::invalid_argument("sample_curve: graph dimension must be 1");
  return CurveState(immersion());
}

DimVec symmetric_eigenvalues(const DimMat& m) {
  const int n = int(m.rows());
  DimVec ev(n);
  if (n == 1) {
    ev[0] = m(0, 0);
    return ev;
  }
  if (n == 2) {
    const double mean = 0.5 * (m(0, 0) + m(1, 1));
    const double half = 0.5 * (m(0, 0) - m(1, 1));
    const double r = std::sqrt(half * half + m(0, 1) * m(0, 1));
    ev[0] = mean - r;
    ev[1] = mean + r;
    return ev;
  }
  // cyclic Jacobi for the 3x3 case
  DimMat a = m;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::max({std::abs(a(0, 1)), std::abs(a(0, 2)), std::abs(a(1, 2))});
    if (off <= 1e-13 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        const double theta = 0.5 * (a(q, q) - a(p, p)) / a(p, q);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        DimMat rot = DimMat::Identity(3, 3);
        rot(p, p) = c;
        rot(q, q) = c;
        rot(p, q) = s;
        rot(q, p) = -s;
        a = (rot.transpose() * a * rot).eval();
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  ev[0] = a(0, 0);
  ev[1] = a(1, 1);
  ev[2] = a(2, 2);
  std::sort(ev.data(), ev.data() + 3);
  return ev;
}

}  // namespace glmcf
