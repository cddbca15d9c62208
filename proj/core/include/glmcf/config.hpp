#pragma once

#include <filesystem>
#include <string>

#include "glmcf/fixtures.hpp"
#include "glmcf/flow.hpp"

namespace glmcf {

struct OutputOptions {
  std::filesystem::path directory = "out";
  bool snapshots = true;
  bool trace = true;
};

/// A fully validated run description. See README for the JSON schema; the
/// loader rejects unknown keys and type or range violations with
/// ConfigError before any computation starts.
struct RunConfig {
  AmbientStructure ambient;
  FlowState initial;
  FlowConfig flow;
  OutputOptions output;
};

RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& json_text);

}  // namespace glmcf
