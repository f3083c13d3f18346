#include "duhamel/app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "duhamel/expr.hpp"

namespace duhamel::app {
namespace {

class Reader {
 public:
  std::vector<std::string> errors;

  void keys(const YAML::Node& n, const std::string& where, const std::set<std::string>& allowed) {
    if (!n.IsMap()) {
      errors.push_back(where + ": expected a mapping");
      return;
    }
    for (const auto& kv : n) {
      const auto k = kv.first.as<std::string>();
      if (!allowed.count(k)) errors.push_back(where + ": unknown key '" + k + "'");
    }
  }

  double number(const YAML::Node& n, const std::string& where) {
    try {
      if (!n.IsScalar()) throw ConfigError("expected a number");
      const auto s = n.as<std::string>();
      try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
      } catch (const std::exception&) {
      }
      const Expr e = Expr::parse(s);
      if (!e.is_constant()) throw ConfigError("expression must be constant");
      return e.constant_value();
    } catch (const std::exception& ex) {
      errors.push_back(where + ": " + ex.what());
      return 0.0;
    }
  }

  std::size_t count(const YAML::Node& n, const std::string& where) {
    const double v = number(n, where);
    if (v < 0 || v != std::floor(v)) {
      errors.push_back(where + ": expected a non-negative integer");
      return 0;
    }
    return static_cast<std::size_t>(v);
  }

  std::string text(const YAML::Node& n, const std::string& where) {
    if (!n.IsScalar()) {
      errors.push_back(where + ": expected a string");
      return {};
    }
    return n.as<std::string>();
  }

  std::string expr(const YAML::Node& n, const std::string& where) {
    const auto s = text(n, where);
    if (s.empty()) return s;
    try {
      Expr::parse(s);
    } catch (const std::exception& ex) {
      errors.push_back(where + ": " + ex.what());
    }
    return s;
  }

  bool boolean(const YAML::Node& n, const std::string& where) {
    try {
      return n.as<bool>();
    } catch (const std::exception&) {
      errors.push_back(where + ": expected a boolean");
      return false;
    }
  }

  std::vector<double> numbers(const YAML::Node& n, const std::string& where) {
    std::vector<double> out;
    if (n.IsScalar()) return {number(n, where)};
    if (!n.IsSequence()) {
      errors.push_back(where + ": expected a list");
      return out;
    }
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(number(n[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::vector<std::size_t> counts(const YAML::Node& n, const std::string& where) {
    std::vector<std::size_t> out;
    for (double v : numbers(n, where)) {
      if (v < 0 || v != std::floor(v)) {
        errors.push_back(where + ": expected non-negative integers");
        continue;
      }
      out.push_back(static_cast<std::size_t>(v));
    }
    return out;
  }

  std::vector<std::string> exprs(const YAML::Node& n, const std::string& where) {
    std::vector<std::string> out;
    if (n.IsScalar()) return {expr(n, where)};
    if (!n.IsSequence()) {
      errors.push_back(where + ": expected a list of expressions");
      return out;
    }
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(expr(n[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::optional<std::pair<double, double>> pair(const YAML::Node& n, const std::string& where) {
    const auto v = numbers(n, where);
    if (v.size() != 2) {
      errors.push_back(where + ": expected [inf, sup]");
      return std::nullopt;
    }
    return std::make_pair(v[0], v[1]);
  }
};

void read_grid(Reader& r, const YAML::Node& n, GridSpec& g) {
  r.keys(n, "grid", {"boundary", "points", "spacing", "length", "origin", "padding"});
  if (!n.IsMap()) return;
  if (n["boundary"]) {
    const auto b = r.text(n["boundary"], "grid.boundary");
    if (b == "periodic") {
      g.boundary = Boundary::Periodic;
    } else if (b == "free-space" || b == "free_space") {
      g.boundary = Boundary::FreeSpaceTruncated;
    } else {
      r.errors.push_back("grid.boundary: expected 'periodic' or 'free-space'");
    }
  }
  if (!n["points"]) {
    r.errors.push_back("grid.points: required");
    return;
  }
  g.points = r.counts(n["points"], "grid.points");
  const std::size_t nd = g.points.size();
  if (nd < 1 || nd > 3) {
    r.errors.push_back("grid.points: 1 to 3 entries required");
    return;
  }
  if (n["spacing"] && n["length"]) r.errors.push_back("grid: give spacing or length, not both");
  if (n["spacing"]) {
    g.spacing = r.numbers(n["spacing"], "grid.spacing");
  } else if (n["length"]) {
    const auto len = r.numbers(n["length"], "grid.length");
    if (len.size() == nd) {
      for (std::size_t d = 0; d < nd; ++d) {
        // periodic: length = N h; free-space: nodes span the closed interval
        const double div = g.boundary == Boundary::Periodic ? static_cast<double>(g.points[d])
                                                            : static_cast<double>(g.points[d] - 1);
        g.spacing.push_back(len[d] / div);
      }
    } else {
      r.errors.push_back("grid.length: one entry per axis required");
    }
  } else {
    r.errors.push_back("grid: spacing or length required");
  }
  g.origin = n["origin"] ? r.numbers(n["origin"], "grid.origin") : std::vector<double>(nd, 0.0);
  if (g.spacing.size() != nd && !g.spacing.empty()) r.errors.push_back("grid.spacing: one entry per axis required");
  if (g.origin.size() != nd) r.errors.push_back("grid.origin: one entry per axis required");
  if (n["padding"]) g.padding = r.number(n["padding"], "grid.padding");
}

void read_series(Reader& r, const YAML::Node& n, RunConfig& c) {
  r.keys(n, "series", {"horizon", "depth_max", "rel_tolerance", "time_steps", "output_times",
                       "quadrature", "interp_degree", "viscosity", "kernel"});
  if (!n.IsMap()) return;
  auto& s = c.series;
  if (n["horizon"]) {
    c.horizon = r.number(n["horizon"], "series.horizon");
  } else {
    r.errors.push_back("series.horizon: required");
  }
  if (n["depth_max"]) s.depth_max = r.count(n["depth_max"], "series.depth_max");
  if (n["rel_tolerance"]) s.rel_tolerance = r.number(n["rel_tolerance"], "series.rel_tolerance");
  if (n["time_steps"]) s.time_steps = r.count(n["time_steps"], "series.time_steps");
  if (n["output_times"]) s.output_times = r.numbers(n["output_times"], "series.output_times");
  if (n["interp_degree"]) s.interp_degree = r.count(n["interp_degree"], "series.interp_degree");
  if (n["viscosity"]) s.kernel.viscosity = r.number(n["viscosity"], "series.viscosity");
  if (n["quadrature"]) {
    const auto q = r.text(n["quadrature"], "series.quadrature");
    if (q == "exponential") {
      s.quadrature = TimeQuadrature::ExponentialPolynomial;
    } else if (q == "trapezoid") {
      s.quadrature = TimeQuadrature::Trapezoid;
    } else {
      r.errors.push_back("series.quadrature: expected 'exponential' or 'trapezoid'");
    }
  }
  if (n["kernel"]) {
    const auto k = r.text(n["kernel"], "series.kernel");
    if (k == "spectral") {
      s.kernel.method = KernelMethod::SpectralPeriodic;
    } else if (k == "direct") {
      s.kernel.method = KernelMethod::DirectQuadrature;
    } else {
      r.errors.push_back("series.kernel: expected 'spectral' or 'direct'");
    }
  }
  try {
    s.validate();
  } catch (const std::exception& e) {
    r.errors.push_back(e.what());
  }
  if (!(c.horizon > 0.0)) r.errors.push_back("series.horizon: must be > 0");
}

}  // namespace

ConfigErrors::ConfigErrors(std::vector<std::string> errors)
    : ConfigError([&] {
        std::string s = "invalid configuration:";
        for (const auto& e : errors) s += "\n  " + e;
        return s;
      }()),
      errors_(std::move(errors)) {}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Nse:
      return "nse";
    case ProblemKind::ControlledHeat:
      return "controlled-heat";
    case ProblemKind::Parabolic:
      return "parabolic";
  }
  return "?";
}

Grid GridSpec::build() const {
  return boundary == Boundary::Periodic ? Grid::periodic(points, spacing, origin)
                                        : Grid::free_space(points, spacing, origin, padding);
}

GridSpec GridSpec::with_points(std::size_t n) const {
  GridSpec g = *this;
  for (std::size_t d = 0; d < points.size(); ++d) {
    const double span = boundary == Boundary::Periodic ? points[d] * spacing[d]
                                                       : (points[d] - 1) * spacing[d];
    g.points[d] = n;
    g.spacing[d] = span / static_cast<double>(boundary == Boundary::Periodic ? n : n - 1);
  }
  return g;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  Reader r;
  RunConfig c;
  c.text = text;
  c.base_dir = base_dir;
  c.hash = fnv1a64(text);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigErrors({std::string("yaml: ") + e.what()});
  }
  if (!root.IsMap()) throw ConfigErrors({"top level: expected a mapping"});
  r.keys(root, "top level", {"schema_version", "problem", "seed", "threads", "grid", "series", "nse",
                             "controlled_heat", "parabolic", "oracle", "output", "bench"});
  if (!root["schema_version"]) {
    r.errors.push_back("schema_version: required");
  } else {
    c.schema_version = static_cast<int>(r.count(root["schema_version"], "schema_version"));
    if (c.schema_version != kSchemaVersion) {
      r.errors.push_back("schema_version: unsupported version " + std::to_string(c.schema_version));
    }
  }
  if (!root["problem"]) {
    r.errors.push_back("problem: required");
  } else {
    const auto p = r.text(root["problem"], "problem");
    if (p == "nse") {
      c.kind = ProblemKind::Nse;
    } else if (p == "controlled-heat" || p == "controlled_heat") {
      c.kind = ProblemKind::ControlledHeat;
    } else if (p == "parabolic") {
      c.kind = ProblemKind::Parabolic;
    } else {
      r.errors.push_back("problem: expected nse, controlled-heat or parabolic");
    }
  }
  if (root["seed"]) c.seed = r.count(root["seed"], "seed");
  if (root["threads"]) c.threads = std::max<std::size_t>(1, r.count(root["threads"], "threads"));
  if (root["grid"]) {
    read_grid(r, root["grid"], c.grid);
  } else {
    r.errors.push_back("grid: required");
  }
  if (root["series"]) {
    read_series(r, root["series"], c);
  } else {
    r.errors.push_back("series: required");
  }

  const char* own = c.kind == ProblemKind::Nse              ? "nse"
                    : c.kind == ProblemKind::ControlledHeat ? "controlled_heat"
                                                            : "parabolic";
  for (const char* sec : {"nse", "controlled_heat", "parabolic"}) {
    if (root[sec] && std::string(sec) != own) {
      r.errors.push_back(std::string(sec) + ": section does not apply to problem " +
                         problem_name(c.kind));
    }
  }
  if (const auto n = root["nse"]) {
    r.keys(n, "nse", {"u0", "u0_file", "x0", "a", "speed_bound", "p_minus_f", "p_minus_f_bounds",
                      "curl_tolerance"});
    if (n.IsMap()) {
      auto& s = c.nse;
      if (n["u0"]) s.u0 = r.exprs(n["u0"], "nse.u0");
      if (n["u0_file"]) s.u0_file = r.text(n["u0_file"], "nse.u0_file");
      if (s.u0.empty() == s.u0_file.empty()) r.errors.push_back("nse: exactly one of u0, u0_file required");
      if (!s.u0.empty() && s.u0.size() != c.grid.points.size()) {
        r.errors.push_back("nse.u0: one expression per grid axis required");
      }
      if (n["x0"]) {
        const auto v = r.numbers(n["x0"], "nse.x0");
        for (std::size_t d = 0; d < std::min<std::size_t>(3, v.size()); ++d) s.x0[d] = v[d];
      }
      if (n["a"]) s.a = r.number(n["a"], "nse.a");
      if (n["speed_bound"]) {
        s.speed_bound = r.number(n["speed_bound"], "nse.speed_bound");
      } else {
        r.errors.push_back("nse.speed_bound: required");
      }
      if (n["p_minus_f"]) s.p_minus_f = r.expr(n["p_minus_f"], "nse.p_minus_f");
      if (n["p_minus_f_bounds"]) s.p_minus_f_bounds = r.pair(n["p_minus_f_bounds"], "nse.p_minus_f_bounds");
      if (n["curl_tolerance"]) s.curl_tolerance = r.number(n["curl_tolerance"], "nse.curl_tolerance");
    }
  } else if (c.kind == ProblemKind::Nse) {
    r.errors.push_back("nse: section required");
  }
  if (const auto n = root["controlled_heat"]) {
    r.keys(n, "controlled_heat", {"G0", "F", "F_bounds", "source"});
    if (n.IsMap()) {
      auto& s = c.heat;
      if (n["G0"]) s.G0 = r.expr(n["G0"], "controlled_heat.G0");
      if (n["F"]) s.F = r.expr(n["F"], "controlled_heat.F");
      if (n["F_bounds"]) s.F_bounds = r.pair(n["F_bounds"], "controlled_heat.F_bounds");
      if (n["source"]) s.source = r.expr(n["source"], "controlled_heat.source");
    }
  }
  if (const auto n = root["parabolic"]) {
    r.keys(n, "parabolic", {"A", "a", "c", "f", "u0", "x_ref", "padding", "A_min"});
    if (n.IsMap()) {
      auto& s = c.parabolic;
      if (n["A"]) s.A = r.expr(n["A"], "parabolic.A");
      if (n["a"]) s.a = r.expr(n["a"], "parabolic.a");
      if (n["c"]) s.c = r.expr(n["c"], "parabolic.c");
      if (n["f"]) s.f = r.expr(n["f"], "parabolic.f");
      if (n["u0"]) s.u0 = r.expr(n["u0"], "parabolic.u0");
      if (n["x_ref"]) s.x_ref = r.number(n["x_ref"], "parabolic.x_ref");
      if (n["padding"]) s.padding = r.number(n["padding"], "parabolic.padding");
      if (n["A_min"]) s.A_min = r.number(n["A_min"], "parabolic.A_min");
    }
  }
  if (c.kind == ProblemKind::Parabolic &&
      (c.grid.points.size() != 1 || c.grid.boundary != Boundary::FreeSpaceTruncated)) {
    r.errors.push_back("grid: parabolic problems need a 1D free-space grid");
  }
  if (const auto n = root["oracle"]) {
    r.keys(n, "oracle", {"exact_u", "exact_G", "exact", "tolerance"});
    if (n.IsMap()) {
      auto& o = c.oracle;
      if (n["exact_u"]) o.exact_u = r.exprs(n["exact_u"], "oracle.exact_u");
      if (n["exact_G"]) o.exact_G = r.expr(n["exact_G"], "oracle.exact_G");
      if (n["exact"]) o.exact = r.expr(n["exact"], "oracle.exact");
      if (n["tolerance"]) o.tolerance = r.number(n["tolerance"], "oracle.tolerance");
      if (!o.exact_u.empty() && c.kind != ProblemKind::Nse) r.errors.push_back("oracle.exact_u: nse only");
      if (!o.exact.empty() && c.kind != ProblemKind::Parabolic) r.errors.push_back("oracle.exact: parabolic only");
      if (!o.exact_G.empty() && c.kind == ProblemKind::Parabolic) r.errors.push_back("oracle.exact_G: not for parabolic");
    }
  }
  if (const auto n = root["output"]) {
    r.keys(n, "output", {"directory", "csv"});
    if (n.IsMap()) {
      if (n["directory"]) c.output_dir = r.text(n["directory"], "output.directory");
      if (n["csv"]) c.write_csv = r.boolean(n["csv"], "output.csv");
    }
  }
  if (const auto n = root["bench"]) {
    r.keys(n, "bench", {"depth", "grid", "time_steps"});
    if (n.IsMap()) {
      if (n["depth"]) c.bench.depth = r.counts(n["depth"], "bench.depth");
      if (n["grid"]) c.bench.grid = r.counts(n["grid"], "bench.grid");
      if (n["time_steps"]) c.bench.time_steps = r.counts(n["time_steps"], "bench.time_steps");
    }
  }
  if (r.errors.empty()) {
    try {
      c.grid.build();
    } catch (const std::exception& e) {
      r.errors.push_back(std::string("grid: ") + e.what());
    }
  }
  if (!r.errors.empty()) throw ConfigErrors(std::move(r.errors));
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigErrors({"cannot read config file '" + path + "'"});
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(ss.str(), dir.empty() ? "." : dir);
}

}  // namespace duhamel::app
