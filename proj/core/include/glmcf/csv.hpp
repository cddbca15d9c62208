#pragma once

#include <filesystem>
#include <string>

#include "glmcf/diagnostics.hpp"
#include "glmcf/flow.hpp"

namespace glmcf {

/// Shortest exact decimal form: 17 significant digits, round-trip safe.
std::string g17(double v);

/// Write via a temporary file in the same directory plus rename, so
/// partial runs never leave truncated files behind.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// Per-node state snapshot. Columns, in order: grid coordinates
/// (s for curves, x1..xn otherwise), ambient components fx1,fy1,...,
/// the potential u for graphs, then theta, omega_sq, norm_H, norm_K.
/// theta is blank when no branch exists.
void write_snapshot(const std::filesystem::path& path, const FlowState& state,
                    const AmbientStructure& a, const Tolerances& tol = {});

/// Columns: t,vol_bar,vol_tilde,vol_hat,max_omega_sq,theta_min,theta_max,max_K,dt
void write_trace(const std::filesystem::path& path, const FlowTrace& trace);

/// Columns: check_id,resolution,residual,order,pass,expected_fail
/// (order is blank on the first rung of each check).
void write_report(const std::filesystem::path& path, const DiagnosticsReport& report);

/// Human-readable report lines, one per check.
std::string format_report(const DiagnosticsReport& report);

}  // namespace glmcf
