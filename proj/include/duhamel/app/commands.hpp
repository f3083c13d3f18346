#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duhamel/app/config.hpp"
#include "duhamel/bounds.hpp"
#include "duhamel/field.hpp"

namespace duhamel::app {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a solve produced, before it is written anywhere.
struct RunResult {
  std::vector<double> times;
  /// Named trajectories, written as <name>.csf1.
  std::vector<std::pair<std::string, ScalarTrajectory>> fields;
  std::vector<BoundReport> bounds;
  std::size_t truncation_depth = 0;
  bool converged = true;
  bool under_resolved = false;
  double tail_estimate = 0.0;
  double last_relative_term = 0.0;
  std::optional<double> oracle_error;  // max over output times
  double oracle_tolerance = 0.0;
  std::optional<double> residual;      // nse only, >= 3 output times
  std::map<std::string, double> extra;  // problem-specific diagnostics
  std::map<std::string, double> timings;

  bool bounds_passed() const;
  bool oracle_passed() const { return !oracle_error || *oracle_error <= oracle_tolerance; }
  /// 0 ok, 3 non-convergence or bound violation, 4 oracle mismatch.
  int exit_code() const;
};

/// Runs the configured problem; throws duhamel::Error on invalid input.
RunResult run(const RunConfig& cfg);

struct SolveOverrides {
  std::optional<std::string> output_dir;
  std::optional<std::size_t> threads;
};

/// Thread count: DUHAMEL_THREADS, then the override, then the config.
std::size_t resolve_threads(const RunConfig& cfg, std::optional<std::size_t> override_threads);

int cmd_solve(const std::string& config_path, const SolveOverrides& ov, std::ostream& out,
              std::ostream& err);

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  std::size_t trials = 20;
  /// Multiplies the M handed to the ceiling and termwise checks (< 1 injects an underestimate).
  double m_scale = 1.0;
};

/// Suites: bounds, oracles, burgers, parabolic, manufactured, all.
bool is_suite(const std::string& name);
int cmd_verify(const std::string& suite, const VerifyOptions& opts, std::ostream& out,
               std::ostream& err);

/// CSV: axis,value,wall_seconds,terms,error,tail
int cmd_bench(const std::string& config_path, const SolveOverrides& ov, std::ostream& out,
              std::ostream& err);

int cmd_inspect(const std::string& path, std::ostream& out, std::ostream& err);

/// Writes {"status":"error",...} for e to err; returns its exit code.
int report_error(const std::exception& e, std::ostream& err);

std::string format_double(double v);

}  // namespace duhamel::app
