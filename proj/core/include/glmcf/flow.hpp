#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "glmcf/geometry.hpp"

namespace glmcf {

enum class FlowKind { Mcf, Gmcf, Scalar };
enum class Integrator { Euler, Rk4 };
enum class Termination { ReachedTEnd, Singularity, GraphViolation };

std::string to_string(FlowKind k);
std::string to_string(Integrator i);
std::string to_string(Termination t);

struct FlowConfig {
  FlowKind kind = FlowKind::Mcf;
  double t_end = 0.0;
  double cfl = 0.2;  // in (0, 0.5]
  Integrator integrator = Integrator::Rk4;
  int snapshot_every = 0;  // 0: record only the first and last step
  Tolerances tol;
};

struct TraceRow {
  double t = 0.0;
  double vol_bar = 0.0, vol_tilde = 0.0, vol_hat = 0.0;
  double max_omega_sq = 0.0;
  double theta_min = 0.0, theta_max = 0.0;
  double max_k = 0.0;
  double dt = 0.0;  // step size that produced this row (0 for the initial row)
};

struct FlowTrace {
  std::vector<TraceRow> rows;
  Termination termination = Termination::ReachedTEnd;
  std::string message;
  int steps = 0;
  double t_final = 0.0;
  /// Largest |omega_ij| component seen at any accepted step.
  double max_abs_omega = 0.0;
  /// Largest |omega|^2 seen at any accepted step.
  double max_omega_sq = 0.0;
  /// Whether Vol_tilde never increased beyond 1e-12 relative per step.
  bool vol_tilde_monotone = true;
};

using FlowState = std::variant<CurveState, GraphState, MeshState>;

/// Classical mean curvature motion dF/dt = H.
void step_mcf(CurveState& s, const AmbientStructure& a, double dt,
              Integrator integ = Integrator::Rk4, const Tolerances& tol = {});
void step_mcf(MeshState& s, const AmbientStructure& a, double dt,
              Integrator integ = Integrator::Rk4, const Tolerances& tol = {});

/// Generalized motion dF/dt = K = H - n pi_nu(grad psi).
void step_gmcf(CurveState& s, const AmbientStructure& a, double dt,
               Integrator integ = Integrator::Rk4, const Tolerances& tol = {});
void step_gmcf(MeshState& s, const AmbientStructure& a, double dt,
               Integrator integ = Integrator::Rk4, const Tolerances& tol = {});

/// Integrated potential flow du/dt = theta(u) on the zero-Maslov branch.
/// When Im h carries a linear piece, theta picks up an affine part in x;
/// it is absorbed into the potential's slope so the periodic samples stay
/// periodic.
void step_scalar(GraphState& s, const AmbientStructure& a, double dt,
                 Integrator integ = Integrator::Rk4, const Tolerances& tol = {});

/// Called whenever a trace row is recorded.
using FlowObserver = std::function<void(const FlowState&, double t, int step)>;

/// Drive one of the three flows from `initial` to t_end with the parabolic
/// step dt = cfl * (min spacing)^2 / max(1, curvature scale). Failures do
/// not propagate: they terminate the run and are recorded in the trace.
/// Deterministic for identical inputs. Graph initial states under the
/// extrinsic flows are sampled to a curve (n = 1) or mesh (n = 2) first.
std::pair<FlowState, FlowTrace> run_flow(FlowState initial, const AmbientStructure& a,
                                         const FlowConfig& cfg,
                                         const FlowObserver& observer = {});

}  // namespace glmcf
