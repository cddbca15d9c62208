#include "glmcf/geometry.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "glmcf/parallel.hpp"

namespace glmcf {

namespace {

void check_curve_speed(const ImmersionPatch& p, const Tolerances& tol) {
  if (p.grid.dim != 1) return;
  const int m = p.num_nodes();
  for (int j = 0; j < m; ++j) {
    const double speed =
        (p.neighbor(j, 0, +1) - AmbVec(p.F.col(j))).norm() / p.grid.spacing[0];
    if (!(speed >= tol.eps_imm)) {
      std::ostringstream os;
      os << "curve speed " << speed << " below floor at node " << j;
      throw DegenerateImmersion(os.str());
    }
  }
}

DimMat invert_spd(const DimMat& g, int node, const Tolerances& tol, double& det) {
  det = g.determinant();
  if (!(det > tol.eps_det)) {
    std::ostringstream os;
    os << "induced metric determinant " << det << " at node " << node;
    throw DegenerateImmersion(os.str());
  }
  return g.inverse();
}

}  // namespace

MetricField induced_metric(const ImmersionPatch& p, const Tolerances& tol) {
  check_curve_speed(p, tol);
  const int d = p.grid.dim;
  const int nn = p.num_nodes();
  MetricField m;
  m.dim = d;
  m.g.resize(nn);
  m.g_inv.resize(nn);
  m.sqrt_det.resize(nn);
  for (int j = 0; j < nn; ++j) {
    std::array<AmbVec, 3> t;
    for (int a = 0; a < d; ++a) t[a] = p.d1(j, a);
    DimMat g(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) g(a, b) = g(b, a) = t[a].dot(t[b]);
    double det = 0.0;
    m.g_inv[j] = invert_spd(g, j, tol, det);
    m.g[j] = g;
    m.sqrt_det[j] = std::sqrt(det);
  }
  return m;
}

AmbVec NodeFrame::project_normal(int dim, const AmbVec& v) const {
  DimVec b(dim);
  for (int i = 0; i < dim; ++i) b[i] = tangent[i].dot(v);
  const DimVec c = g_inv * b;
  AmbVec out = v;
  for (int i = 0; i < dim; ++i) out -= c[i] * tangent[i];
  return out;
}

SecondFundamentalData second_fundamental(const ImmersionPatch& p,
                                         const AmbientStructure& a,
                                         const Tolerances& tol) {
  check_curve_speed(p, tol);
  const int d = p.grid.dim;
  const int nn = p.num_nodes();
  SecondFundamentalData out;
  out.dim = d;
  out.nodes.resize(nn);

  // validate determinants up front so the parallel region cannot throw
  {
    MetricField probe = induced_metric(p, tol);
    (void)probe;
  }

  parallel_for(nn, [&](int j) {
    NodeFrame& f = out.nodes[j];
    for (int i = 0; i < d; ++i) f.tangent[i] = p.d1(j, i);
    DimMat g(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = i; k < d; ++k) g(i, k) = g(k, i) = f.tangent[i].dot(f.tangent[k]);
    f.g = g;
    f.det_g = g.determinant();
    f.sqrt_det_g = std::sqrt(f.det_g);
    f.g_inv = g.inverse();

    for (int i = 0; i < d; ++i)
      for (int k = i; k < d; ++k) {
        f.d2F[i][k] = p.d2(j, i, k);
        f.d2F[k][i] = f.d2F[i][k];
      }

    for (int i = 0; i < d; ++i)
      for (int k = i; k < d; ++k) {
        f.II[i][k] = f.project_normal(d, f.d2F[i][k]);
        f.II[k][i] = f.II[i][k];
      }

    f.H = AmbVec::Zero(p.ambient_dim());
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) f.H += f.g_inv(i, k) * f.II[i][k];

    for (int i = 0; i < d; ++i) f.N[i] = f.project_normal(d, apply_J(f.tangent[i]));

    f.eta = DimMat(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = i; k < d; ++k) f.eta(i, k) = f.eta(k, i) = f.N[i].dot(f.N[k]);

    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) f.h3[i][k][l] = -f.N[i].dot(f.d2F[k][l]);

    const AmbVec gp = grad_psi(a, p.F.col(j));
    f.K = f.H - double(a.n) * f.project_normal(d, gp);

    f.alpha_H = DimVec(d);
    f.alpha_K = DimVec(d);
    for (int i = 0; i < d; ++i) {
      f.alpha_H[i] = omega_bar(f.H, f.tangent[i]);
      f.alpha_K[i] = omega_bar(f.K, f.tangent[i]);
    }
  });
  return out;
}

double SecondFundamentalData::max_K_norm() const {
  double m = 0.0;
  for (const auto& f : nodes) m = std::max(m, f.K.norm());
  return m;
}

double SecondFundamentalData::max_II_norm() const {
  double m = 0.0;
  for (const auto& f : nodes) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l)
            s += f.g_inv(i, k) * f.g_inv(j, l) * f.II[i][j].dot(f.II[k][l]);
    m = std::max(m, std::sqrt(std::max(0.0, s)));
  }
  return m;
}

GeneralizedCurvature generalized_mean_curvature(const ImmersionPatch& p,
                                                const AmbientStructure& a,
                                                const Tolerances& tol) {
  const SecondFundamentalData sfd = second_fundamental(p, a, tol);
  GeneralizedCurvature out;
  out.K.reserve(sfd.nodes.size());
  out.alpha_K.reserve(sfd.nodes.size());
  for (const auto& f : sfd.nodes) {
    out.K.push_back(f.K);
    out.alpha_K.push_back(f.alpha_K);
  }
  return out;
}

OmegaPullback omega_pullback(const ImmersionPatch& p, const Tolerances& tol) {
  const MetricField m = induced_metric(p, tol);
  const int d = p.grid.dim;
  const int nn = p.num_nodes();
  OmegaPullback out;
  out.dim = d;
  out.omega.resize(nn);
  out.norm_sq.assign(nn, 0.0);
  for (int j = 0; j < nn; ++j) {
    std::array<AmbVec, 3> t;
    for (int a = 0; a < d; ++a) t[a] = p.d1(j, a);
    DimMat w = DimMat::Zero(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        w(a, b) = omega_bar(t[a], t[b]);
        w(b, a) = -w(a, b);
      }
    out.omega[j] = w;
    double s = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e)
            s += m.g_inv[j](a, c) * m.g_inv[j](b, e) * w(a, b) * w(c, e);
    out.norm_sq[j] = s;
  }
  return out;
}

double OmegaPullback::max_abs_component() const {
  double m = 0.0;
  for (const auto& w : omega) m = std::max(m, w.cwiseAbs().maxCoeff());
  return m;
}

double OmegaPullback::max_norm_sq() const {
  double m = 0.0;
  for (double v : norm_sq) m = std::max(m, v);
  return m;
}

double AngleField::min() const {
  double m = theta.empty() ? 0.0 : theta[0];
  for (double v : theta) m = std::min(m, v);
  return m;
}

double AngleField::max() const {
  double m = theta.empty() ? 0.0 : theta[0];
  for (double v : theta) m = std::max(m, v);
  return m;
}

double AngleField::neighbor_theta(int idx, int axis, int by) const {
  int wc = 0;
  const int j = grid.shifted(idx, axis, by, wc);
  return theta[j] + double(wc) * cycle_change[axis];
}

double AngleField::derivative(int idx, int axis) const {
  return (neighbor_theta(idx, axis, +1) - neighbor_theta(idx, axis, -1)) /
         (2.0 * grid.spacing[axis]);
}

namespace {

// Raw phase Im h(F) + arg det(dz/dx) per node.
std::vector<double> raw_phase(const ImmersionPatch& p, const AmbientStructure& a) {
  const int d = p.grid.dim;
  const int nn = p.num_nodes();
  std::vector<double> raw(nn);
  for (int j = 0; j < nn; ++j) {
    std::array<std::array<std::complex<double>, 3>, 3> jac;
    for (int i = 0; i < d; ++i) {
      const AmbVec t = p.d1(j, i);
      for (int zc = 0; zc < p.ambient_n; ++zc)
        jac[zc][i] = {t[2 * zc], t[2 * zc + 1]};
    }
    std::complex<double> det;
    if (d == 1) {
      det = jac[0][0];
    } else {
      det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    }
    raw[j] = im_h(a, p.F.col(j)) + std::arg(det);
  }
  return raw;
}

// Change of Im h across the seam of `axis`, seen from the wrapped-in node.
double deck_shift(const ImmersionPatch& p, const AmbientStructure& a, int node_wrapped,
                  int wrap_count, int axis) {
  if (wrap_count == 0 || a.exponent.is_zero()) return 0.0;
  const AmbVec base = p.F.col(node_wrapped);
  const AmbVec moved = base + double(wrap_count) * p.wrap[axis];
  return im_h(a, moved) - im_h(a, base);
}

// Branch increment along one grid edge: the representative of the raw
// difference closest to zero, deck corrected.
double edge_increment(const ImmersionPatch& p, const AmbientStructure& a,
                      const std::vector<double>& raw, int idx, int axis) {
  int wc = 0;
  const int j = p.grid.shifted(idx, axis, +1, wc);
  const double b = deck_shift(p, a, j, wc, axis);
  return wrap_to_pi(raw[j] + b - raw[idx]);
}

AngleField unwrap_patch(const ImmersionPatch& p, const AmbientStructure& a) {
  const int d = p.grid.dim;
  const auto raw = raw_phase(p, a);
  AngleField out;
  out.grid = p.grid;
  out.theta.assign(raw.size(), 0.0);

  const int n0 = p.grid.size[0];
  out.theta[p.grid.flatten({0, 0, 0})] = wrap_to_pi(raw[p.grid.flatten({0, 0, 0})]);

  // unwrap the first row, then every column from its row-0 value
  for (int i = 1; i < n0; ++i) {
    const int prev = p.grid.flatten({i - 1, 0, 0});
    const int cur = p.grid.flatten({i, 0, 0});
    out.theta[cur] = out.theta[prev] + edge_increment(p, a, raw, prev, 0);
  }
  {
    double tau = 0.0;
    for (int i = 0; i < n0; ++i) tau += edge_increment(p, a, raw, p.grid.flatten({i, 0, 0}), 0);
    out.cycle_change[0] = tau;
    out.winding[0] = int(std::lround(tau / (2.0 * M_PI)));
  }
  if (d == 2) {
    const int n1 = p.grid.size[1];
    for (int i = 0; i < n0; ++i) {
      for (int k = 1; k < n1; ++k) {
        const int prev = p.grid.flatten({i, k - 1, 0});
        const int cur = p.grid.flatten({i, k, 0});
        out.theta[cur] = out.theta[prev] + edge_increment(p, a, raw, prev, 1);
      }
    }
    double tau = 0.0;
    for (int k = 0; k < n1; ++k) tau += edge_increment(p, a, raw, p.grid.flatten({0, k, 0}), 1);
    out.cycle_change[1] = tau;
    out.winding[1] = int(std::lround(tau / (2.0 * M_PI)));

    // every edge of the lattice must agree with the stored branch
    for (int j = 0; j < p.num_nodes(); ++j) {
      for (int axis = 0; axis < d; ++axis) {
        const double inc = edge_increment(p, a, raw, j, axis);
        const double stored = out.neighbor_theta(j, axis, +1) - out.theta[j];
        if (std::abs(stored - inc) >= M_PI) {
          std::ostringstream os;
          os << "angle branch mismatch " << std::abs(stored - inc) << " at node " << j
             << " axis " << axis;
          throw BranchInconsistency(os.str());
        }
      }
    }
  }
  return out;
}

}  // namespace

AngleField lagrangian_angle(const CurveState& s, const AmbientStructure& a,
                            const Tolerances& tol) {
  check_curve_speed(s.patch, tol);
  return unwrap_patch(s.patch, a);
}

AngleField lagrangian_angle(const MeshState& s, const AmbientStructure& a,
                            const Tolerances& tol) {
  induced_metric(s.patch, tol);  // immersion check
  return unwrap_patch(s.patch, a);
}

AngleField lagrangian_angle(const GraphState& s, const AmbientStructure& a,
                            const Tolerances& tol) {
  const int nn = s.grid.num_nodes();
  const ImmersionPatch p = s.immersion();
  AngleField out;
  out.grid = s.grid;
  out.theta.assign(nn, 0.0);
  for (int j = 0; j < nn; ++j) {
    const DimVec ev = symmetric_eigenvalues(s.hess_u(j));
    double phase = 0.0;
    for (int k = 0; k < ev.size(); ++k) {
      if (std::abs(ev[k]) > tol.hess_cap) {
        std::ostringstream os;
        os << "Hessian eigenvalue " << ev[k] << " at node " << j << " exceeds cap "
           << tol.hess_cap;
        throw GraphConditionViolated(os.str());
      }
      phase += std::atan(ev[k]);
    }
    out.theta[j] = im_h(a, p.F.col(j)) + phase;
  }
  // theta is single valued; only Im h can change across the seam
  for (int axis = 0; axis < s.grid.dim; ++axis) {
    out.cycle_change[axis] = deck_shift(p, a, 0, 1, axis);
    out.winding[axis] = int(std::lround(out.cycle_change[axis] / (2.0 * M_PI)));
  }
  return out;
}

double special_lagrangian_residual(const AngleField& angle) {
  for (int axis = 0; axis < angle.grid.dim; ++axis) {
    if (angle.winding[axis] != 0) {
      std::ostringstream os;
      os << "nonzero winding " << angle.winding[axis] << " on axis " << axis
         << "; no single phase exists";
      throw BranchInconsistency(os.str());
    }
  }
  double cs = 0.0, sn = 0.0;
  for (double t : angle.theta) {
    cs += std::cos(t);
    sn += std::sin(t);
  }
  const double theta0 = std::atan2(sn, cs);
  double r = 0.0;
  for (double t : angle.theta) r = std::max(r, std::abs(std::sin(t - theta0)));
  return r;
}

std::vector<DimVec> alpha_form(const ImmersionPatch& p, const std::vector<AmbVec>& xi,
                               const Tolerances& tol) {
  if (int(xi.size()) != p.num_nodes())
    throw std::invalid_argument("alpha_form: field size mismatch");
  const int d = p.grid.dim;
  const int nn = p.num_nodes();
  std::vector<DimVec> out(nn);
  for (int j = 0; j < nn; ++j) {
    std::array<AmbVec, 3> t;
    for (int a = 0; a < d; ++a) t[a] = p.d1(j, a);
    for (int a = 0; a < d; ++a) {
      const double tangential = std::abs(xi[j].dot(t[a]));
      const double scale = xi[j].norm() * t[a].norm();
      if (tangential > tol.normal_tol * std::max(scale, 1e-300) && scale > 0.0) {
        std::ostringstream os;
        os << "field has tangential component " << tangential / scale << " at node " << j;
        throw NotNormal(os.str());
      }
    }
    DimVec al(d);
    for (int a = 0; a < d; ++a) al[a] = omega_bar(xi[j], t[a]);
    out[j] = al;
  }
  return out;
}

double volume(const ImmersionPatch& p, const AmbientStructure& a, VolumeWeight w,
              const Tolerances& tol) {
  const MetricField m = induced_metric(p, tol);
  double cell = 1.0;
  for (int k = 0; k < p.grid.dim; ++k) cell *= p.grid.spacing[k];
  double v = 0.0;
  const int nn = p.num_nodes();
  for (int j = 0; j < nn; ++j) v += volume_density(a, p.F.col(j), w) * m.sqrt_det[j];
  return v * cell;
}

}  // namespace glmcf
