#include "glmcf/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace glmcf {

std::optional<Fixture> fixture_from_string(const std::string& name) {
  if (name == "circle") return Fixture::Circle;
  if (name == "line") return Fixture::Line;
  if (name == "plane") return Fixture::Plane;
  if (name == "sine_graph_1d") return Fixture::SineGraph1d;
  if (name == "sine_graph_2d") return Fixture::SineGraph2d;
  if (name == "shear_mesh") return Fixture::ShearMesh;
  if (name == "graph_mesh_2d") return Fixture::GraphMesh2d;
  return std::nullopt;
}

std::string to_string(Fixture f) {
  switch (f) {
    case Fixture::Circle: return "circle";
    case Fixture::Line: return "line";
    case Fixture::Plane: return "plane";
    case Fixture::SineGraph1d: return "sine_graph_1d";
    case Fixture::SineGraph2d: return "sine_graph_2d";
    case Fixture::ShearMesh: return "shear_mesh";
    case Fixture::GraphMesh2d: return "graph_mesh_2d";
  }
  return "circle";
}

namespace {

double amplitude_or(const FixtureParams& p, double dflt) {
  return std::isnan(p.amplitude) ? dflt : p.amplitude;
}

GraphState sine_graph_1d(int m, const FixtureParams& p) {
  GraphState g(1, {m, 1, 1});
  const double amp = amplitude_or(p, 0.1);
  for (int j = 0; j < m; ++j) g.u[j] = amp * std::sin(p.mode * g.coords(j)[0]);
  return g;
}

GraphState sine_graph_2d(int n, const FixtureParams& p) {
  GraphState g(2, {n, n, 1});
  const double amp = amplitude_or(p, 0.2);
  for (int j = 0; j < g.grid.num_nodes(); ++j) {
    const DimVec x = g.coords(j);
    g.u[j] = amp * std::sin(x[0]) * std::cos(x[1]);
  }
  return g;
}

MeshState shear_mesh(int n, const FixtureParams& p) {
  ImmersionPatch patch(PeriodicGrid::box(2, {n, n, 1},
                                         {2.0 * M_PI / n, 2.0 * M_PI / n, 1.0}),
                       2);
  for (int j = 0; j < patch.num_nodes(); ++j) {
    const auto c = patch.grid.unflatten(j);
    const double x1 = c[0] * patch.grid.spacing[0];
    const double x2 = c[1] * patch.grid.spacing[1];
    patch.F(0, j) = x1;
    patch.F(1, j) = p.shear * x2;
    patch.F(2, j) = x2;
    patch.F(3, j) = 0.0;
  }
  AmbVec w0 = AmbVec::Zero(4), w1 = AmbVec::Zero(4);
  w0[0] = 2.0 * M_PI;
  w1[1] = p.shear * 2.0 * M_PI;
  w1[2] = 2.0 * M_PI;
  patch.wrap[0] = w0;
  patch.wrap[1] = w1;
  return MeshState(std::move(patch));
}

}  // namespace

FlowState make_fixture(Fixture f, int resolution, const FixtureParams& params) {
  if (resolution < 8) throw std::invalid_argument("fixture resolution must be >= 8");
  switch (f) {
    case Fixture::Circle: {
      std::vector<Eigen::Vector2d> pts(resolution);
      for (int j = 0; j < resolution; ++j) {
        const double s = 2.0 * M_PI * j / resolution;
        pts[j] = params.radius * Eigen::Vector2d(std::cos(s), std::sin(s));
      }
      return CurveState::closed(pts);
    }
    case Fixture::Line: {
      std::vector<Eigen::Vector2d> pts(resolution);
      for (int j = 0; j < resolution; ++j)
        pts[j] = Eigen::Vector2d(2.0 * M_PI * j / resolution, 0.0);
      return CurveState::wrapped(pts, 1.0 / resolution, {2.0 * M_PI, 0.0});
    }
    case Fixture::Plane:
      return GraphState(2, {resolution, resolution, 1});
    case Fixture::SineGraph1d:
      return sine_graph_1d(resolution, params);
    case Fixture::SineGraph2d:
      return sine_graph_2d(resolution, params);
    case Fixture::ShearMesh:
      return shear_mesh(resolution, params);
    case Fixture::GraphMesh2d:
      return sine_graph_2d(resolution, params).sample_mesh();
  }
  throw std::invalid_argument("unknown fixture");
}

int default_fixture_resolution(Fixture f) {
  switch (f) {
    case Fixture::Circle:
    case Fixture::Line:
      return 256;
    default:
      return 32;
  }
}

}  // namespace glmcf
