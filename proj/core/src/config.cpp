#include "glmcf/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace glmcf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const std::string& ctx,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(ctx + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail("unknown key '" + it.key() + "' in " + ctx);
  }
}

const json& require(const json& obj, const std::string& ctx, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ctx + " is missing required key '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& ctx) {
  if (!v.is_number()) fail(ctx + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& ctx) {
  if (!v.is_number_integer()) fail(ctx + " must be an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& ctx) {
  if (!v.is_boolean()) fail(ctx + " must be a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& ctx) {
  if (!v.is_string()) fail(ctx + " must be a string");
  return v.get<std::string>();
}

AmbientStructure parse_ambient(const json& j) {
  check_keys(j, "ambient", {"n", "coefficients", "negative_control"});
  const int n = as_int(require(j, "ambient", "n"), "ambient.n");
  if (n < 1 || n > 3) fail("ambient.n must be 1, 2 or 3");

  std::vector<HolomorphicExponent::Term> terms;
  if (j.contains("coefficients")) {
    const json& cs = j["coefficients"];
    if (!cs.is_array()) fail("ambient.coefficients must be an array of triples");
    for (const auto& triple : cs) {
      if (!triple.is_array() || triple.size() != 3)
        fail("ambient.coefficients entries must be [multi_index, re, im] triples");
      const json& mi = triple[0];
      if (!mi.is_array() || int(mi.size()) != n)
        fail("ambient.coefficients multi-index must have length n");
      HolomorphicExponent::Term t;
      for (int k = 0; k < n; ++k) {
        const int p = as_int(mi[k], "ambient.coefficients multi-index entry");
        if (p < 0 || p > 16) fail("ambient.coefficients powers must lie in 0..16");
        t.powers[k] = p;
      }
      t.coeff = {as_number(triple[1], "ambient.coefficients re"),
                 as_number(triple[2], "ambient.coefficients im")};
      terms.push_back(t);
    }
  }

  NegativeControl control = NegativeControl::None;
  if (j.contains("negative_control")) {
    const std::string name = as_string(j["negative_control"], "ambient.negative_control");
    const auto c = negative_control_from_string(name);
    if (!c) fail("unknown negative control '" + name + "'");
    control = *c;
  }

  try {
    HolomorphicExponent h(n, std::move(terms));
    if (control == NegativeControl::None) return AmbientStructure::with_exponent(std::move(h));
    return AmbientStructure::negative(n, control, std::move(h));
  } catch (const std::invalid_argument& e) {
    fail(std::string("ambient: ") + e.what());
  }
}

int fixture_dimension(Fixture f) {
  switch (f) {
    case Fixture::Circle:
    case Fixture::Line:
    case Fixture::SineGraph1d:
      return 1;
    default:
      return 2;
  }
}

bool fixture_kind_matches(Fixture f, const std::string& kind) {
  switch (f) {
    case Fixture::Circle:
    case Fixture::Line:
      return kind == "curve";
    case Fixture::Plane:
    case Fixture::SineGraph1d:
    case Fixture::SineGraph2d:
      return kind == "graph";
    case Fixture::ShearMesh:
    case Fixture::GraphMesh2d:
      return kind == "mesh";
  }
  return false;
}

FixtureParams parse_fixture_params(const json& j) {
  check_keys(j, "initial_state.params", {"radius", "amplitude", "shear", "mode"});
  FixtureParams p;
  if (j.contains("radius")) {
    p.radius = as_number(j["radius"], "params.radius");
    if (!(p.radius > 0.0)) fail("params.radius must be > 0");
  }
  if (j.contains("amplitude")) p.amplitude = as_number(j["amplitude"], "params.amplitude");
  if (j.contains("shear")) p.shear = as_number(j["shear"], "params.shear");
  if (j.contains("mode")) {
    p.mode = as_int(j["mode"], "params.mode");
    if (p.mode < 1) fail("params.mode must be >= 1");
  }
  return p;
}

FlowState parse_initial(const json& j, int ambient_n) {
  check_keys(j, "initial_state",
             {"kind", "fixture", "resolution", "params", "points", "n", "size", "u",
              "slope", "F", "wrap"});
  const std::string kind = as_string(require(j, "initial_state", "kind"), "initial_state.kind");
  if (kind != "curve" && kind != "graph" && kind != "mesh")
    fail("initial_state.kind must be curve, graph or mesh");

  if (j.contains("fixture")) {
    for (const char* k : {"points", "u", "F", "size", "n", "slope", "wrap"}) {
      if (j.contains(k)) fail(std::string("initial_state: '") + k + "' conflicts with 'fixture'");
    }
    const std::string name = as_string(j["fixture"], "initial_state.fixture");
    const auto f = fixture_from_string(name);
    if (!f) fail("unknown fixture '" + name + "'");
    if (!fixture_kind_matches(*f, kind))
      fail("fixture '" + name + "' does not produce a " + kind + " state");
    if (fixture_dimension(*f) != ambient_n)
      fail("fixture '" + name + "' needs ambient.n = " + std::to_string(fixture_dimension(*f)));
    const int res = as_int(require(j, "initial_state", "resolution"), "initial_state.resolution");
    if (res < 8) fail("initial_state.resolution must be >= 8");
    FixtureParams params;
    if (j.contains("params")) params = parse_fixture_params(j["params"]);
    return make_fixture(*f, res, params);
  }

  // inline data
  if (kind == "curve") {
    if (ambient_n != 1) fail("curve states need ambient.n = 1");
    const json& pts = require(j, "initial_state", "points");
    if (!pts.is_array() || pts.size() < 8) fail("initial_state.points needs >= 8 entries");
    std::vector<Eigen::Vector2d> points;
    for (const auto& e : pts) {
      if (!e.is_array() || e.size() != 2) fail("initial_state.points entries must be [x, y]");
      points.emplace_back(as_number(e[0], "point x"), as_number(e[1], "point y"));
    }
    try {
      return CurveState::closed(points);
    } catch (const std::invalid_argument& e) {
      fail(std::string("initial_state: ") + e.what());
    }
  }

  if (kind == "graph") {
    const int n = as_int(require(j, "initial_state", "n"), "initial_state.n");
    if (n != ambient_n) fail("initial_state.n must match ambient.n");
    const json& sz = require(j, "initial_state", "size");
    if (!sz.is_array() || int(sz.size()) != n) fail("initial_state.size must have n entries");
    std::array<int, 3> size{1, 1, 1};
    for (int k = 0; k < n; ++k) {
      size[k] = as_int(sz[k], "initial_state.size entry");
      if (size[k] < 8) fail("initial_state.size entries must be >= 8");
    }
    GraphState g(n, size);
    const json& u = require(j, "initial_state", "u");
    if (!u.is_array() || int(u.size()) != g.grid.num_nodes())
      fail("initial_state.u must list one value per node");
    for (int idx = 0; idx < g.grid.num_nodes(); ++idx)
      g.u[idx] = as_number(u[idx], "initial_state.u entry");
    if (j.contains("slope")) {
      const json& sl = j["slope"];
      if (!sl.is_array() || int(sl.size()) != n) fail("initial_state.slope must have n entries");
      for (int k = 0; k < n; ++k) g.slope[k] = as_number(sl[k], "initial_state.slope entry");
    }
    return g;
  }

  // mesh
  if (ambient_n != 2) fail("mesh states need ambient.n = 2");
  const json& sz = require(j, "initial_state", "size");
  if (!sz.is_array() || sz.size() != 2) fail("initial_state.size must be [N1, N2]");
  const int n1 = as_int(sz[0], "initial_state.size[0]");
  const int n2 = as_int(sz[1], "initial_state.size[1]");
  if (n1 < 8 || n2 < 8) fail("initial_state.size entries must be >= 8");
  ImmersionPatch patch(
      PeriodicGrid::box(2, {n1, n2, 1}, {2.0 * M_PI / n1, 2.0 * M_PI / n2, 1.0}), 2);
  const json& fv = require(j, "initial_state", "F");
  if (!fv.is_array() || int(fv.size()) != patch.num_nodes())
    fail("initial_state.F must list one [4] entry per node (row major, axis 0 slowest)");
  for (int idx = 0; idx < patch.num_nodes(); ++idx) {
    const json& e = fv[idx];
    if (!e.is_array() || e.size() != 4) fail("initial_state.F entries must have 4 components");
    for (int c = 0; c < 4; ++c) patch.F(c, idx) = as_number(e[c], "initial_state.F component");
  }
  if (j.contains("wrap")) {
    const json& w = j["wrap"];
    if (!w.is_array() || w.size() != 2) fail("initial_state.wrap must be [[4],[4]]");
    for (int axis = 0; axis < 2; ++axis) {
      if (!w[axis].is_array() || w[axis].size() != 4)
        fail("initial_state.wrap entries must have 4 components");
      for (int c = 0; c < 4; ++c)
        patch.wrap[axis][c] = as_number(w[axis][c], "initial_state.wrap component");
    }
  } else {
    patch.wrap[0][0] = 2.0 * M_PI;
    patch.wrap[1][2] = 2.0 * M_PI;
  }
  return MeshState(std::move(patch));
}

FlowConfig parse_flow(const json& j) {
  check_keys(j, "flow",
             {"kind", "t_end", "cfl", "integrator", "snapshot_every", "stop_tolerances"});
  FlowConfig cfg;
  const std::string kind = as_string(require(j, "flow", "kind"), "flow.kind");
  if (kind == "mcf")
    cfg.kind = FlowKind::Mcf;
  else if (kind == "gmcf")
    cfg.kind = FlowKind::Gmcf;
  else if (kind == "scalar")
    cfg.kind = FlowKind::Scalar;
  else
    fail("flow.kind must be mcf, gmcf or scalar");

  cfg.t_end = as_number(require(j, "flow", "t_end"), "flow.t_end");
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) fail("flow.t_end must be finite and >= 0");

  if (j.contains("cfl")) {
    cfg.cfl = as_number(j["cfl"], "flow.cfl");
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.5)) fail("flow.cfl must lie in (0, 0.5]");
  }
  if (j.contains("integrator")) {
    const std::string integ = as_string(j["integrator"], "flow.integrator");
    if (integ == "euler")
      cfg.integrator = Integrator::Euler;
    else if (integ == "rk4")
      cfg.integrator = Integrator::Rk4;
    else
      fail("flow.integrator must be euler or rk4");
  }
  if (j.contains("snapshot_every")) {
    cfg.snapshot_every = as_int(j["snapshot_every"], "flow.snapshot_every");
    if (cfg.snapshot_every < 0) fail("flow.snapshot_every must be >= 0");
  }
  if (j.contains("stop_tolerances")) {
    const json& t = j["stop_tolerances"];
    check_keys(t, "flow.stop_tolerances", {"eps_det", "eps_imm", "hess_cap", "k_cap"});
    if (t.contains("eps_det")) cfg.tol.eps_det = as_number(t["eps_det"], "eps_det");
    if (t.contains("eps_imm")) cfg.tol.eps_imm = as_number(t["eps_imm"], "eps_imm");
    if (t.contains("hess_cap")) cfg.tol.hess_cap = as_number(t["hess_cap"], "hess_cap");
    if (t.contains("k_cap")) cfg.tol.k_cap = as_number(t["k_cap"], "k_cap");
    for (double v : {cfg.tol.eps_det, cfg.tol.eps_imm, cfg.tol.hess_cap, cfg.tol.k_cap}) {
      if (!(v > 0.0)) fail("flow.stop_tolerances entries must be > 0");
    }
  }
  return cfg;
}

OutputOptions parse_output(const json& j) {
  check_keys(j, "output", {"directory", "snapshots", "trace"});
  OutputOptions o;
  if (j.contains("directory")) o.directory = as_string(j["directory"], "output.directory");
  if (j.contains("snapshots")) o.snapshots = as_bool(j["snapshots"], "output.snapshots");
  if (j.contains("trace")) o.trace = as_bool(j["trace"], "output.trace");
  return o;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, "config", {"ambient", "initial_state", "flow", "output"});

  RunConfig cfg;
  cfg.ambient = parse_ambient(require(root, "config", "ambient"));
  cfg.initial = parse_initial(require(root, "config", "initial_state"), cfg.ambient.n);
  cfg.flow = parse_flow(require(root, "config", "flow"));
  if (root.contains("output")) cfg.output = parse_output(root["output"]);

  const bool is_graph = std::holds_alternative<GraphState>(cfg.initial);
  if (cfg.flow.kind == FlowKind::Scalar && !is_graph)
    fail("the scalar flow needs a graph initial state");
  if (cfg.flow.kind != FlowKind::Scalar && is_graph && cfg.ambient.n > 2)
    fail("extrinsic flows of graph states need n <= 2");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace glmcf
