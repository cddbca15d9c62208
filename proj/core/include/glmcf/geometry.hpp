#pragma once

#include <vector>

#include "glmcf/ambient.hpp"
#include "glmcf/states.hpp"
#include "glmcf/types.hpp"

namespace glmcf {

/// Induced metric data per node.
struct MetricField {
  int dim = 1;
  std::vector<DimMat> g;
  std::vector<DimMat> g_inv;
  std::vector<double> sqrt_det;
};

/// g_ij = <d_i F, d_j F> with centered differences; throws
/// DegenerateImmersion when det g drops to the floor. Curves additionally
/// enforce the speed floor.
MetricField induced_metric(const ImmersionPatch& p, const Tolerances& tol = {});

/// Full pointwise extrinsic package: metric, second fundamental form,
/// the tensors N_i = pi_nu(J e_i), eta_ij = <N e_i, N e_j>,
/// h_ijk = -<N e_i, d_j d_k F>, mean curvature H, generalized mean
/// curvature K = H - n pi_nu(grad psi), and the one-forms
/// alpha_H(e_i) = omega_bar(H, e_i), alpha_K(e_i) = omega_bar(K, e_i).
struct NodeFrame {
  DimMat g, g_inv;
  double det_g = 0.0, sqrt_det_g = 0.0;
  std::array<AmbVec, 3> tangent;
  std::array<std::array<AmbVec, 3>, 3> d2F;
  std::array<std::array<AmbVec, 3>, 3> II;
  AmbVec H, K;
  std::array<AmbVec, 3> N;
  DimMat eta;
  double h3[3][3][3] = {};
  DimVec alpha_H, alpha_K;

  /// Component of v orthogonal to the discrete tangent space (Gram solve,
  /// no explicit normal frame).
  AmbVec project_normal(int dim, const AmbVec& v) const;
};

struct SecondFundamentalData {
  int dim = 1;
  std::vector<NodeFrame> nodes;

  double max_K_norm() const;
  /// Tensor norm |II| = sqrt(g^{ik} g^{jl} <II_ij, II_kl>), maximized over
  /// nodes; the curvature scale entering the CFL bound.
  double max_II_norm() const;
};

SecondFundamentalData second_fundamental(const ImmersionPatch& p,
                                         const AmbientStructure& a,
                                         const Tolerances& tol = {});

struct GeneralizedCurvature {
  std::vector<AmbVec> K;
  std::vector<DimVec> alpha_K;
};

GeneralizedCurvature generalized_mean_curvature(const ImmersionPatch& p,
                                                const AmbientStructure& a,
                                                const Tolerances& tol = {});

/// Pullback of the ambient symplectic form: omega_ij = omega_bar(d_iF, d_jF)
/// and the squared tensor norm |omega|^2 = g^{ik} g^{jl} omega_ij omega_kl.
/// Curves return zeros by dimension.
struct OmegaPullback {
  int dim = 1;
  std::vector<DimMat> omega;
  std::vector<double> norm_sq;

  double max_abs_component() const;
  double max_norm_sq() const;
};

OmegaPullback omega_pullback(const ImmersionPatch& p, const Tolerances& tol = {});

/// Continuous branch of the Lagrangian angle defined by
/// F*Omega = e^{i theta + n psi} dV_g.
///
/// Stored values are real (a lift along the unwrapping path). cycle_change
/// holds the total change of theta around each grid axis; its nearest
/// integer multiple of 2 pi is reported as the winding. Neighbor lookups
/// that cross the periodic seam must add cycle_change, which
/// neighbor_theta does.
struct AngleField {
  PeriodicGrid grid;
  std::vector<double> theta;
  std::array<double, 3> cycle_change{0.0, 0.0, 0.0};
  std::array<int, 3> winding{0, 0, 0};

  double min() const;
  double max() const;
  double neighbor_theta(int idx, int axis, int by) const;
  /// Centered derivative of the branch along axis, seam aware.
  double derivative(int idx, int axis) const;
};

/// Curve: theta = Im h(gamma) + arg gamma', unwrapped from node 0.
AngleField lagrangian_angle(const CurveState& s, const AmbientStructure& a,
                            const Tolerances& tol = {});

/// Mesh: theta = Im h(F) + arg det of the complex Jacobian, unwrapped along
/// the first grid row and then down every column; an edgewise consistency
/// check rejects branch mismatches of pi or more.
AngleField lagrangian_angle(const MeshState& s, const AmbientStructure& a,
                            const Tolerances& tol = {});

/// Graph: theta = Im h(F) + sum_k arctan lambda_k(Hess u), the canonical
/// zero-Maslov branch, single valued by construction.
AngleField lagrangian_angle(const GraphState& s, const AmbientStructure& a,
                            const Tolerances& tol = {});

/// theta_0 = circular mean of theta; residual = max |sin(theta - theta_0)|.
/// Zero exactly when the discrete state is special Lagrangian with phase
/// theta_0. Requires winding 0 on every axis.
double special_lagrangian_residual(const AngleField& angle);

/// One-form alpha_xi(e_i) = omega_bar(xi, d_iF) of a normal field. Throws
/// NotNormal when xi has a tangential residual above tolerance.
std::vector<DimVec> alpha_form(const ImmersionPatch& p, const std::vector<AmbVec>& xi,
                               const Tolerances& tol = {});

/// Riemann sum of the induced volume with the chosen conformal weight.
double volume(const ImmersionPatch& p, const AmbientStructure& a, VolumeWeight w,
              const Tolerances& tol = {});

}  // namespace glmcf
