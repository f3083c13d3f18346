#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duhamel/error.hpp"
#include "duhamel/grid.hpp"
#include "duhamel/series.hpp"

namespace duhamel::app {

inline constexpr int kSchemaVersion = 1;

enum class ProblemKind { Nse, ControlledHeat, Parabolic };

struct GridSpec {
  Boundary boundary = Boundary::Periodic;
  std::vector<std::size_t> points;
  std::vector<double> spacing;
  std::vector<double> origin;
  double padding = 1.0;

  Grid build() const;
  /// Same extent with n points per axis.
  GridSpec with_points(std::size_t n) const;
};

struct NseSpec {
  std::vector<std::string> u0;  // one expression per axis
  std::string u0_file;          // CSF1, one record per component
  Point x0{};
  double a = 0.0;
  double speed_bound = 0.0;
  std::string p_minus_f = "0";
  std::optional<std::pair<double, double>> p_minus_f_bounds;
  std::optional<double> curl_tolerance;
};

struct HeatSpec {
  std::string G0 = "1";
  std::string F = "0";
  std::optional<std::pair<double, double>> F_bounds;
  std::string source;
};

struct ParabolicSpec {
  std::string A = "-1";
  std::string a = "0";
  std::string c = "0";
  std::string f = "0";
  std::string u0 = "0";
  std::optional<double> x_ref;
  double padding = 2.0;
  double A_min = 1e-12;
};

struct OracleSpec {
  std::vector<std::string> exact_u;  // nse
  std::string exact_G;               // nse / controlled heat
  std::string exact;                 // parabolic u(x, t)
  double tolerance = 1e-4;
  bool any() const { return !exact_u.empty() || !exact_G.empty() || !exact.empty(); }
};

struct BenchSpec {
  std::vector<std::size_t> depth;
  std::vector<std::size_t> grid;
  std::vector<std::size_t> time_steps;
  bool empty() const { return depth.empty() && grid.empty() && time_steps.empty(); }
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  ProblemKind kind = ProblemKind::ControlledHeat;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  GridSpec grid;
  double horizon = 1.0;
  SeriesOptions series;
  NseSpec nse;
  HeatSpec heat;
  ParabolicSpec parabolic;
  OracleSpec oracle;
  std::string output_dir = "out";
  bool write_csv = false;
  BenchSpec bench;

  std::string text;        // source as read
  std::string base_dir;    // directory of the config file
  std::uint64_t hash = 0;  // FNV-1a 64 of text
};

/// Schema violations, all collected before failing.
class ConfigErrors : public ConfigError {
 public:
  explicit ConfigErrors(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string problem_name(ProblemKind k);

RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

}  // namespace duhamel::app
