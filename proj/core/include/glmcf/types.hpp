#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace glmcf {

// Ambient vectors live in R^{2n} with n <= 3 complex dimensions; intrinsic
// objects live on an n-dimensional parameter domain. Fixed-capacity Eigen
// types keep all per-node work free of heap traffic.
using AmbVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 6, 1>;
using DimVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
using DimMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;

/// Numerical guards for discrete immersions. The continuum theory assumes
/// smooth immersions; the discrete code fails loudly instead of degrading.
struct Tolerances {
  double eps_det = 1e-8;    ///< floor for det of the induced metric
  double eps_imm = 1e-6;    ///< floor for the discrete speed of a curve
  double hess_cap = 50.0;   ///< graph condition: max |eigenvalue of Hess u|
  double k_cap = 1e6;       ///< flow stop: sup |K| over nodes
  double normal_tol = 1e-8; ///< relative tangential residual allowed in alpha_form
};

struct DegenerateImmersion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphConditionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BranchInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotNormal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientSnapshots : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wrap an angle difference into (-pi, pi].
double wrap_to_pi(double x);

}  // namespace glmcf
