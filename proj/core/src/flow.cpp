#include "glmcf/flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace glmcf {

std::string to_string(FlowKind k) {
  switch (k) {
    case FlowKind::Mcf: return "mcf";
    case FlowKind::Gmcf: return "gmcf";
    case FlowKind::Scalar: return "scalar";
  }
  return "mcf";
}

std::string to_string(Integrator i) {
  return i == Integrator::Euler ? "euler" : "rk4";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTEnd: return "reached_t_end";
    case Termination::Singularity: return "singularity";
    case Termination::GraphViolation: return "graph_violation";
  }
  return "reached_t_end";
}

namespace {

Eigen::MatrixXd extrinsic_velocity(const ImmersionPatch& p, const AmbientStructure& a,
                                   bool generalized, const Tolerances& tol) {
  const SecondFundamentalData sfd = second_fundamental(p, a, tol);
  Eigen::MatrixXd v(p.ambient_dim(), p.num_nodes());
  for (int j = 0; j < p.num_nodes(); ++j)
    v.col(j) = generalized ? sfd.nodes[j].K : sfd.nodes[j].H;
  return v;
}

void step_patch(ImmersionPatch& p, const AmbientStructure& a, double dt, bool generalized,
                Integrator integ, const Tolerances& tol) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  if (integ == Integrator::Euler) {
    p.F += dt * extrinsic_velocity(p, a, generalized, tol);
    return;
  }
  const Eigen::MatrixXd k1 = extrinsic_velocity(p, a, generalized, tol);
  ImmersionPatch stage = p;
  stage.F = p.F + 0.5 * dt * k1;
  const Eigen::MatrixXd k2 = extrinsic_velocity(stage, a, generalized, tol);
  stage.F = p.F + 0.5 * dt * k2;
  const Eigen::MatrixXd k3 = extrinsic_velocity(stage, a, generalized, tol);
  stage.F = p.F + dt * k3;
  const Eigen::MatrixXd k4 = extrinsic_velocity(stage, a, generalized, tol);
  p.F += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// theta as a plain real field over the nodes; u update splits off the
// affine growth rate Im(c_k) coming from the linear part of h.
struct ScalarRate {
  Eigen::VectorXd du;  // periodic part
  DimVec dslope;
};

ScalarRate scalar_velocity(const GraphState& s, const AmbientStructure& a,
                           const Tolerances& tol) {
  const AngleField angle = lagrangian_angle(s, a, tol);
  ScalarRate r;
  r.dslope = DimVec::Zero(s.n());
  for (int k = 0; k < s.n(); ++k)
    r.dslope[k] = a.exponent.linear_coeff(k).imag();
  r.du.resize(s.grid.num_nodes());
  for (int j = 0; j < s.grid.num_nodes(); ++j)
    r.du[j] = angle.theta[j] - r.dslope.dot(s.coords(j));
  return r;
}

void step_scalar_impl(GraphState& s, const AmbientStructure& a, double dt,
                      Integrator integ, const Tolerances& tol) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_scalar: dt must be > 0");
  if (integ == Integrator::Euler) {
    const ScalarRate r = scalar_velocity(s, a, tol);
    s.u += dt * r.du;
    s.slope += dt * r.dslope;
    return;
  }
  const ScalarRate k1 = scalar_velocity(s, a, tol);
  GraphState stage = s;
  stage.u = s.u + 0.5 * dt * k1.du;
  stage.slope = s.slope + 0.5 * dt * k1.dslope;
  const ScalarRate k2 = scalar_velocity(stage, a, tol);
  stage.u = s.u + 0.5 * dt * k2.du;
  stage.slope = s.slope + 0.5 * dt * k2.dslope;
  const ScalarRate k3 = scalar_velocity(stage, a, tol);
  stage.u = s.u + dt * k3.du;
  stage.slope = s.slope + dt * k3.dslope;
  const ScalarRate k4 = scalar_velocity(stage, a, tol);
  s.u += (dt / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
  s.slope += (dt / 6.0) * (k1.dslope + 2.0 * k2.dslope + 2.0 * k3.dslope + k4.dslope);
}

}  // namespace

void step_mcf(CurveState& s, const AmbientStructure& a, double dt, Integrator integ,
              const Tolerances& tol) {
  step_patch(s.patch, a, dt, false, integ, tol);
}
void step_mcf(MeshState& s, const AmbientStructure& a, double dt, Integrator integ,
              const Tolerances& tol) {
  step_patch(s.patch, a, dt, false, integ, tol);
}
void step_gmcf(CurveState& s, const AmbientStructure& a, double dt, Integrator integ,
               const Tolerances& tol) {
  step_patch(s.patch, a, dt, true, integ, tol);
}
void step_gmcf(MeshState& s, const AmbientStructure& a, double dt, Integrator integ,
               const Tolerances& tol) {
  step_patch(s.patch, a, dt, true, integ, tol);
}
void step_scalar(GraphState& s, const AmbientStructure& a, double dt, Integrator integ,
                 const Tolerances& tol) {
  step_scalar_impl(s, a, dt, integ, tol);
}

namespace {

const ImmersionPatch& state_patch(const FlowState& s, ImmersionPatch& scratch) {
  if (const auto* c = std::get_if<CurveState>(&s)) return c->patch;
  if (const auto* m = std::get_if<MeshState>(&s)) return m->patch;
  scratch = std::get<GraphState>(s).immersion();
  return scratch;
}

TraceRow trace_row(const FlowState& s, const AmbientStructure& a, const FlowConfig& cfg,
                   double t, double dt) {
  ImmersionPatch scratch;
  const ImmersionPatch& p = state_patch(s, scratch);
  TraceRow row;
  row.t = t;
  row.dt = dt;
  row.vol_bar = volume(p, a, VolumeWeight::Bar, cfg.tol);
  row.vol_tilde = volume(p, a, VolumeWeight::Tilde, cfg.tol);
  row.vol_hat = volume(p, a, VolumeWeight::Hat, cfg.tol);
  row.max_omega_sq = omega_pullback(p, cfg.tol).max_norm_sq();
  row.max_k = second_fundamental(p, a, cfg.tol).max_K_norm();
  try {
    AngleField angle;
    if (const auto* g = std::get_if<GraphState>(&s)) {
      angle = lagrangian_angle(*g, a, cfg.tol);
    } else if (const auto* c = std::get_if<CurveState>(&s)) {
      angle = lagrangian_angle(*c, a, cfg.tol);
    } else {
      angle = lagrangian_angle(std::get<MeshState>(s), a, cfg.tol);
    }
    row.theta_min = angle.min();
    row.theta_max = angle.max();
  } catch (const std::runtime_error&) {
    row.theta_min = row.theta_max = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

std::pair<FlowState, FlowTrace> run_flow(FlowState initial, const AmbientStructure& a,
                                         const FlowConfig& cfg,
                                         const FlowObserver& observer) {
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end))
    throw std::invalid_argument("run_flow: t_end must be finite and >= 0");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.5))
    throw std::invalid_argument("run_flow: cfl must lie in (0, 0.5]");

  FlowState state = std::move(initial);

  // extrinsic flows act on curves and meshes; sample graphs first
  if (cfg.kind != FlowKind::Scalar) {
    if (auto* g = std::get_if<GraphState>(&state)) {
      if (g->n() == 1)
        state = g->sample_curve();
      else if (g->n() == 2)
        state = g->sample_mesh();
      else
        throw std::invalid_argument("run_flow: extrinsic flow needs n <= 2 initial data");
    }
  } else if (!std::holds_alternative<GraphState>(state)) {
    throw std::invalid_argument("run_flow: the scalar flow needs a graph state");
  }

  FlowTrace trace;
  double t = 0.0;
  int step = 0;
  double prev_vol_tilde = std::numeric_limits<double>::quiet_NaN();

  auto record = [&](double dt_used) {
    trace.rows.push_back(trace_row(state, a, cfg, t, dt_used));
    if (observer) observer(state, t, step);
  };

  auto track_step = [&](void) -> bool {
    // cheap per-step monitors: symplectic drift and the tilde volume
    ImmersionPatch scratch;
    const ImmersionPatch& p = state_patch(state, scratch);
    const OmegaPullback om = omega_pullback(p, cfg.tol);
    trace.max_abs_omega = std::max(trace.max_abs_omega, om.max_abs_component());
    trace.max_omega_sq = std::max(trace.max_omega_sq, om.max_norm_sq());
    const double vt = volume(p, a, VolumeWeight::Tilde, cfg.tol);
    if (cfg.kind != FlowKind::Mcf && std::isfinite(prev_vol_tilde)) {
      if (vt > prev_vol_tilde * (1.0 + 1e-12)) trace.vol_tilde_monotone = false;
    }
    prev_vol_tilde = vt;
    return true;
  };

  try {
    track_step();
    record(0.0);

    while (t < cfg.t_end) {
      // parabolic step from the current geometry
      double dt = 0.0;
      if (cfg.kind == FlowKind::Scalar) {
        const auto& g = std::get<GraphState>(state);
        const double h = g.grid.min_spacing();
        const double cap = g.max_hess_eigenvalue();
        if (cap > cfg.tol.hess_cap)
          throw GraphConditionViolated("Hessian eigenvalue exceeds cap");
        dt = cfg.cfl * h * h / std::max(1.0, cap);
      } else {
        ImmersionPatch scratch;
        const ImmersionPatch& p = state_patch(state, scratch);
        const double h = p.min_node_spacing();
        const SecondFundamentalData sfd = second_fundamental(p, a, cfg.tol);
        const double kn = cfg.kind == FlowKind::Gmcf ? sfd.max_K_norm() : 0.0;
        if (kn > cfg.tol.k_cap) throw DegenerateImmersion("sup |K| exceeds cap");
        dt = cfg.cfl * h * h / std::max(1.0, sfd.max_II_norm());
      }
      if (t + dt > cfg.t_end) dt = cfg.t_end - t;
      if (!(dt > 0.0)) break;

      switch (cfg.kind) {
        case FlowKind::Mcf:
          if (auto* c = std::get_if<CurveState>(&state))
            step_mcf(*c, a, dt, cfg.integrator, cfg.tol);
          else
            step_mcf(std::get<MeshState>(state), a, dt, cfg.integrator, cfg.tol);
          break;
        case FlowKind::Gmcf:
          if (auto* c = std::get_if<CurveState>(&state))
            step_gmcf(*c, a, dt, cfg.integrator, cfg.tol);
          else
            step_gmcf(std::get<MeshState>(state), a, dt, cfg.integrator, cfg.tol);
          break;
        case FlowKind::Scalar:
          step_scalar(std::get<GraphState>(state), a, dt, cfg.integrator, cfg.tol);
          break;
      }
      t += dt;
      ++step;
      track_step();
      const bool last = !(t < cfg.t_end);
      if (last || (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0)) record(dt);
    }
    trace.termination = Termination::ReachedTEnd;
  } catch (const GraphConditionViolated& e) {
    trace.termination = Termination::GraphViolation;
    trace.message = e.what();
    try {
      record(0.0);
    } catch (const std::runtime_error&) {
    }
  } catch (const DegenerateImmersion& e) {
    trace.termination = Termination::Singularity;
    trace.message = e.what();
    try {
      record(0.0);
    } catch (const std::runtime_error&) {
    }
  }

  trace.steps = step;
  trace.t_final = t;
  return {std::move(state), std::move(trace)};
}

}  // namespace glmcf
