#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "glmcf/grid.hpp"
#include "glmcf/types.hpp"

namespace glmcf {

/// Discrete immersion of a periodic parameter grid into R^{2n}: one ambient
/// position per node plus a constant deck offset per grid axis. The offset
/// is added to neighbor values when a stencil crosses the periodic seam, so
/// states like the periodized line F(s) = (2 pi s, 0) or toroidal graph
/// samplings differentiate cleanly.
struct ImmersionPatch {
  PeriodicGrid grid;
  int ambient_n = 1;   // complex dimension of the target, positions in R^{2n}
  Eigen::MatrixXd F;   // (2 * ambient_n) x num_nodes
  std::array<AmbVec, 3> wrap{};

  ImmersionPatch() = default;
  ImmersionPatch(PeriodicGrid g, int n);

  int ambient_dim() const { return 2 * ambient_n; }
  int num_nodes() const { return grid.num_nodes(); }

  AmbVec node(int idx) const { return F.col(idx); }

  /// Position of the node `by` steps along `axis`, deck corrected.
  AmbVec neighbor(int idx, int axis, int by) const;

  /// Same step on two axes (for cross derivatives).
  AmbVec neighbor2(int idx, int a, int by_a, int b, int by_b) const;

  /// Centered first derivative along axis.
  AmbVec d1(int idx, int axis) const;

  /// Compact centered second derivative (3-point on the diagonal, 4-point
  /// cross stencil).
  AmbVec d2(int idx, int a, int b) const;

  /// Shortest edge of the embedded grid; the parabolic CFL scale.
  double min_node_spacing() const;
};

/// Closed polyline in C = R^2 with uniform parameter. The circle fixture
/// uses the unit parameter interval; samplings of 1d graphs keep the
/// [0, 2pi) domain of the potential.
struct CurveState {
  ImmersionPatch patch;

  CurveState() = default;
  explicit CurveState(ImmersionPatch p) : patch(std::move(p)) {}

  /// Uniform parameter in [0,1), spacing 1/M, no deck offset.
  static CurveState closed(const std::vector<Eigen::Vector2d>& points);

  /// Curve with a deck offset, e.g. the periodized horizontal line.
  static CurveState wrapped(const std::vector<Eigen::Vector2d>& points,
                            double spacing, const Eigen::Vector2d& wrap);

  int size() const { return patch.num_nodes(); }
};

/// Free periodic map T^2 -> C^2 for the extrinsic flow and for measuring
/// the symplectic pullback; can represent non-Lagrangian states on purpose.
struct MeshState {
  ImmersionPatch patch;

  MeshState() = default;
  explicit MeshState(ImmersionPatch p) : patch(std::move(p)) {}

  int size_per_axis() const { return patch.grid.size[0]; }
};

/// Scalar potential u on a periodic n-grid over [0, 2pi)^n, representing
/// the Lagrangian graph x + i grad u(x). The potential may carry an affine
/// part (slope . x) on top of the periodic samples: the integrated flow
/// grows such a part whenever Im h has a linear piece, and Hess u does not
/// see it.
struct GraphState {
  PeriodicGrid grid;   // dim = n
  Eigen::VectorXd u;   // periodic samples
  DimVec slope;        // affine coefficient of the potential

  GraphState() = default;
  GraphState(int n, const std::array<int, 3>& size);

  int n() const { return grid.dim; }

  DimVec coords(int idx) const;
  double u_total(int idx) const;  // periodic sample + slope . x
  DimVec grad_u(int idx) const;   // centered difference + slope
  DimMat hess_u(int idx) const;   // compact stencils, slope free

  double max_hess_eigenvalue() const;

  /// The sampled immersion x -> x + i grad u(x).
  ImmersionPatch immersion() const;

  MeshState sample_mesh() const;    // n == 2
  CurveState sample_curve() const;  // n == 1
};

/// Eigenvalues of a symmetric matrix of size <= 3, ascending. Closed form
/// up to 2x2; cyclic Jacobi sweeps to 1e-13 for 3x3, so results are
/// deterministic across platforms.
DimVec symmetric_eigenvalues(const DimMat& m);

}  // namespace glmcf
