#include "glmcf/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace glmcf {

std::string g17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.good()) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

struct SnapshotFields {
  std::vector<double> theta;  // empty when the branch failed
  OmegaPullback omega;
  std::vector<double> norm_h, norm_k;
};

SnapshotFields snapshot_fields(const ImmersionPatch& p, const AmbientStructure& a,
                               const Tolerances& tol) {
  SnapshotFields f;
  f.omega = omega_pullback(p, tol);
  const SecondFundamentalData sfd = second_fundamental(p, a, tol);
  f.norm_h.reserve(sfd.nodes.size());
  f.norm_k.reserve(sfd.nodes.size());
  for (const auto& n : sfd.nodes) {
    f.norm_h.push_back(n.H.norm());
    f.norm_k.push_back(n.K.norm());
  }
  return f;
}

void append_common_header(std::ostringstream& os, int ambient_n) {
  for (int k = 1; k <= ambient_n; ++k) os << ",fx" << k << ",fy" << k;
}

void append_point(std::ostringstream& os, const ImmersionPatch& p, int j) {
  for (int c = 0; c < p.ambient_dim(); ++c) os << "," << g17(p.F(c, j));
}

void append_tail(std::ostringstream& os, const SnapshotFields& f, int j) {
  if (f.theta.empty())
    os << ",";
  else
    os << "," << g17(f.theta[j]);
  os << "," << g17(f.omega.norm_sq[j]) << "," << g17(f.norm_h[j]) << ","
     << g17(f.norm_k[j]) << "\n";
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const FlowState& state,
                    const AmbientStructure& a, const Tolerances& tol) {
  std::ostringstream os;
  if (const auto* c = std::get_if<CurveState>(&state)) {
    const ImmersionPatch& p = c->patch;
    SnapshotFields f = snapshot_fields(p, a, tol);
    try {
      f.theta = lagrangian_angle(*c, a, tol).theta;
    } catch (const std::runtime_error&) {
    }
    os << "s";
    append_common_header(os, 1);
    os << ",theta,omega_sq,norm_H,norm_K\n";
    for (int j = 0; j < p.num_nodes(); ++j) {
      os << g17(j * p.grid.spacing[0]);
      append_point(os, p, j);
      append_tail(os, f, j);
    }
  } else if (const auto* g = std::get_if<GraphState>(&state)) {
    const ImmersionPatch p = g->immersion();
    SnapshotFields f = snapshot_fields(p, a, tol);
    try {
      f.theta = lagrangian_angle(*g, a, tol).theta;
    } catch (const std::runtime_error&) {
    }
    os << "x1";
    for (int k = 2; k <= g->n(); ++k) os << ",x" << k;
    append_common_header(os, g->n());
    os << ",u,theta,omega_sq,norm_H,norm_K\n";
    for (int j = 0; j < p.num_nodes(); ++j) {
      const DimVec x = g->coords(j);
      os << g17(x[0]);
      for (int k = 1; k < g->n(); ++k) os << "," << g17(x[k]);
      append_point(os, p, j);
      os << "," << g17(g->u_total(j));
      append_tail(os, f, j);
    }
  } else {
    const MeshState& m = std::get<MeshState>(state);
    const ImmersionPatch& p = m.patch;
    SnapshotFields f = snapshot_fields(p, a, tol);
    try {
      f.theta = lagrangian_angle(m, a, tol).theta;
    } catch (const std::runtime_error&) {
    }
    os << "x1,x2";
    append_common_header(os, 2);
    os << ",theta,omega_sq,norm_H,norm_K\n";
    for (int j = 0; j < p.num_nodes(); ++j) {
      const auto c = p.grid.unflatten(j);
      os << g17(c[0] * p.grid.spacing[0]) << "," << g17(c[1] * p.grid.spacing[1]);
      append_point(os, p, j);
      append_tail(os, f, j);
    }
  }
  atomic_write_file(path, os.str());
}

void write_trace(const std::filesystem::path& path, const FlowTrace& trace) {
  std::ostringstream os;
  os << "t,vol_bar,vol_tilde,vol_hat,max_omega_sq,theta_min,theta_max,max_K,dt\n";
  for (const auto& r : trace.rows) {
    os << g17(r.t) << "," << g17(r.vol_bar) << "," << g17(r.vol_tilde) << ","
       << g17(r.vol_hat) << "," << g17(r.max_omega_sq) << "," << g17(r.theta_min) << ","
       << g17(r.theta_max) << "," << g17(r.max_k) << "," << g17(r.dt) << "\n";
  }
  atomic_write_file(path, os.str());
}

void write_report(const std::filesystem::path& path, const DiagnosticsReport& report) {
  std::ostringstream os;
  os << "check_id,resolution,residual,order,pass,expected_fail\n";
  for (const auto& e : report.entries) {
    for (std::size_t r = 0; r < e.residuals.size(); ++r) {
      os << e.id << "," << e.resolutions[r] << "," << g17(e.residuals[r]) << ",";
      if (r >= 1 && !std::isnan(e.orders[r - 1])) os << g17(e.orders[r - 1]);
      os << "," << (e.pass ? "true" : "false") << ","
         << (e.expected_fail ? "true" : "false") << "\n";
    }
  }
  atomic_write_file(path, os.str());
}

std::string format_report(const DiagnosticsReport& report) {
  std::ostringstream os;
  for (const auto& e : report.entries) {
    os << (e.ok() ? "[ ok ] " : "[FAIL] ") << e.id << "  residual=";
    for (std::size_t r = 0; r < e.residuals.size(); ++r) {
      if (r) os << " -> ";
      os << g17(e.residuals[r]);
    }
    bool has_order = false;
    for (double o : e.orders)
      if (!std::isnan(o)) has_order = true;
    if (has_order) {
      os << "  order=";
      bool first = true;
      for (double o : e.orders) {
        if (!first) os << ",";
        first = false;
        os << (std::isnan(o) ? std::string("-") : g17(o));
      }
    }
    if (e.expected_fail) os << "  expected_fail=true";
    if (!e.note.empty()) os << "  (" << e.note << ")";
    os << "\n";
  }
  os << (report.all_ok() ? "all checks in order\n" : "some checks failed\n");
  return os.str();
}

}  // namespace glmcf
