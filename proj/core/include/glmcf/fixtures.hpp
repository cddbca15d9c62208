#pragma once

#include <optional>
#include <string>

#include "glmcf/flow.hpp"

namespace glmcf {

/// Built-in initial states.
///
///   circle         unit circle in C, M nodes (resolution = M)
///   line           periodized horizontal line y = 0, deck offset (2 pi, 0)
///   plane          flat graph u = 0 on [0,2pi)^2
///   sine_graph_1d  u = amplitude * sin(mode x)           (default 0.1, 1)
///   sine_graph_2d  u = amplitude * sin x1 cos x2         (default 0.2)
///   shear_mesh     z1 = x1 + i shear x2, z2 = x2, constant symplectic
///                  defect omega_12 = shear                (default -0.1)
///   graph_mesh_2d  mesh sampling of sine_graph_2d
enum class Fixture {
  Circle,
  Line,
  Plane,
  SineGraph1d,
  SineGraph2d,
  ShearMesh,
  GraphMesh2d
};

std::optional<Fixture> fixture_from_string(const std::string& name);
std::string to_string(Fixture f);

struct FixtureParams {
  double radius = 1.0;
  double amplitude = std::numeric_limits<double>::quiet_NaN();  // per-fixture default
  double shear = -0.1;
  int mode = 1;
};

/// resolution = nodes per grid axis (curves: total node count).
FlowState make_fixture(Fixture f, int resolution, const FixtureParams& params = {});

/// Default resolution used by the fixture export command.
int default_fixture_resolution(Fixture f);

}  // namespace glmcf
