#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nimt/harness.hpp"

namespace nimt {

/// Fully validated run configuration. Referenced image files are loaded at
/// parse time; unknown or out-of-range keys are rejected with their path.
struct RunConfig {
  std::string scenario_name;
  ScenarioOverrides overrides;
  TeacherPolicy teacher;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  bool assert_descent = true;
  bool assert_theorem1 = true;
  std::optional<GridFunction> alt_image;
  std::optional<double> alt_prob;
};

RunConfig parse_config(const std::string& json_text);

/// PGM (P2 ascii / P5 binary, maxval-normalized to [0,1]) or CSV grid of
/// reals already in [0,1].
GridFunction load_grayscale_image(const std::string& path);

/// CSV with header t,x,y,S_star,S_rand,gamma,psi,M,Lbar,descent_lhs,
/// descent_rhs,bound_rhs; reals at 17 significant digits; pack examples
/// joined with '|', coordinates within a point with ';'.
void write_iteration_log(const std::vector<IterationRecord>& records,
                         const std::string& path);

/// write_iteration_log plus a '#'-comment footer with convergence status.
void write_session_log(const SessionLog& log, const std::string& path);

/// Re-parses a written log; '#' lines are ignored. Numeric fields
/// round-trip exactly.
std::vector<IterationRecord> read_iteration_log(const std::string& path);

/// Resolves a RunConfig into a runnable session.
SessionConfig build_session(const RunConfig& config);

}  // namespace nimt
