#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glmcf/flow.hpp"

namespace glmcf {

/// Closedness of the mean curvature form (d alpha_H = pullback of the
/// Ricci form, which vanishes for admissible structures).
///
/// Curves: a pointwise exterior derivative is void on a 1-manifold, so the
/// residual is the discrete Stokes defect |sum alpha_H ds + 2 pi w| with w
/// the turning winding; it vanishes for closed plane curves in admissible
/// structures because d^c psi is exact on C. Requires a curve without deck
/// offset.
double check_dazord(const CurveState& s, const AmbientStructure& a,
                    const Tolerances& tol = {});

/// Meshes: max-norm of (d alpha_H)_12 minus n dd^c psi(e_1, e_2).
double check_dazord(const MeshState& s, const AmbientStructure& a,
                    const Tolerances& tol = {});

/// Max-norm of alpha_K + d theta over nodes and axes; the discrete form of
/// the duality between the generalized mean curvature and the Lagrangian
/// angle.
double check_alpha_k_dtheta(const CurveState& s, const AmbientStructure& a,
                            const Tolerances& tol = {});
double check_alpha_k_dtheta(const GraphState& s, const AmbientStructure& a,
                            const Tolerances& tol = {});
double check_alpha_k_dtheta(const MeshState& s, const AmbientStructure& a,
                            const Tolerances& tol = {});

/// Residual of d theta/dt = Laplace_g theta + n d psi(grad_g theta) along a
/// potential-flow trajectory, centered at the middle of >= 3 equispaced
/// snapshots. Throws InsufficientSnapshots otherwise.
double check_theta_evolution(const std::vector<GraphState>& snapshots, double dt,
                             const AmbientStructure& a, const Tolerances& tol = {});

inline constexpr std::uint64_t kGradientFlowSeed = 0x5eed0b5e55ed01d7ull;

/// First-variation test: for seeded random normal fields Y, compare the
/// centered difference of Vol_tilde under F +/- probe Y against
/// -integral e^{n psi} <K, Y> dV. Returns the max relative error.
double check_gradient_flow(const ImmersionPatch& p, const AmbientStructure& a,
                           int trials, double probe,
                           std::uint64_t seed = kGradientFlowSeed,
                           const Tolerances& tol = {});

/// Mean curvature of the state with respect to the rescaled ambient metric
/// e^{2 psi} g, assembled independently (wide-stencil derivatives of the
/// tangent frame plus the conformal Christoffel correction), against
/// e^{-2 psi} K. Max-norm residual.
double check_tilde_mean_curvature(const ImmersionPatch& p, const AmbientStructure& a,
                                  const Tolerances& tol = {});

struct EvolutionResiduals {
  double omega = 0.0;   // d/dt omega_ij vs (d alpha_K)_ij
  double metric = 0.0;  // d/dt g_ij vs -2 eta^{mn} (alpha_H)_m h_nij + 2n dpsi(II_ij)
};

/// Both structure-evolution identities along an extrinsic run, centered at
/// the middle of >= 3 equispaced mesh snapshots.
EvolutionResiduals check_evolution_equations(const std::vector<MeshState>& snapshots,
                                             double dt, const AmbientStructure& a,
                                             const Tolerances& tol = {});

enum class Suite { Identities, Flows, Preservation, All };

std::optional<Suite> suite_from_string(const std::string& name);
std::string to_string(Suite s);

struct CheckResult {
  std::string id;
  std::vector<int> resolutions;
  std::vector<double> residuals;
  /// orders[r] estimates convergence between rung r and rung r+1; NaN when
  /// a residual sits at the rounding floor.
  std::vector<double> orders;
  bool pass = false;
  bool expected_fail = false;
  std::string note;

  /// An entry is in order when it passes, or when it was expected to fail
  /// and did.
  bool ok() const { return pass != expected_fail; }
};

struct DiagnosticsReport {
  std::vector<CheckResult> entries;
  bool all_ok() const;
};

/// Run the named suite across the resolution ladder (per-axis node counts;
/// curve fixtures use 4x the rung for comparable arc resolution). Throws
/// std::invalid_argument on an empty or malformed ladder before any
/// computation.
DiagnosticsReport run_suite(Suite suite, const std::vector<int>& ladder);

}  // namespace glmcf
