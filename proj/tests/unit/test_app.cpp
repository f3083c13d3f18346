#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "duhamel/app/commands.hpp"
#include "duhamel/app/config.hpp"
#include "duhamel/field_io.hpp"
#include "json.hpp"

using namespace duhamel;
using namespace duhamel::app;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("duhamel_app_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

const char* kHeat = R"yaml(schema_version: 1
problem: controlled-heat
grid: {boundary: periodic, points: [128], length: [2*pi]}
series: {horizon: 1, depth_max: 16, time_steps: 32}
controlled_heat: {G0: "1", F: "0.5"}
oracle: {exact_G: "exp(0.5*t)", tolerance: 1e-10}
)yaml";

const char* kBurgers = R"yaml(schema_version: 1
problem: nse
grid: {boundary: periodic, points: [256], length: [2*pi]}
series: {horizon: 0.5, output_times: [0.25, 0.5]}
nse: {u0: ["sin(x)/(1 + 0.5*cos(x))"], a: -2*log(1.5), speed_bound: 2}
oracle: {exact_u: ["exp(-t)*sin(x)/(1 + 0.5*exp(-t)*cos(x))"], tolerance: 1e-4}
)yaml";

nlohmann::json last_json_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return nlohmann::json::parse(last);
}

}  // namespace

TEST_CASE("config parsing accepts expressions and fills defaults") {
  const auto c = parse_config(kHeat);
  CHECK(c.kind == ProblemKind::ControlledHeat);
  CHECK(c.grid.spacing[0] == doctest::Approx(2 * 3.141592653589793 / 128));
  CHECK(c.series.depth_max == 16);
  CHECK(c.series.quadrature == TimeQuadrature::ExponentialPolynomial);
  CHECK(c.horizon == 1.0);
  CHECK(c.hash == fnv1a64(kHeat));
  CHECK(fnv1a64("") == 14695981039346656037ull);
  const auto b = parse_config(kBurgers);
  CHECK(b.nse.a == doctest::Approx(-2 * std::log(1.5)));
}

TEST_CASE("config parsing rejects unknown keys and collects every error") {
  std::string text = kHeat;
  text += "extra: 1\n";
  text.replace(text.find("depth_max"), 9, "depth_mux");
  try {
    parse_config(text);
    FAIL("expected ConfigErrors");
  } catch (const ConfigErrors& e) {
    REQUIRE(e.errors().size() == 2);
    CHECK(e.errors()[0].find("extra") != std::string::npos);
    CHECK(e.errors()[1].find("depth_mux") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("problem: nse\n"), ConfigErrors);
  std::string v2 = kHeat;
  v2.replace(v2.find("schema_version: 1"), 17, "schema_version: 2");
  CHECK_THROWS_AS(parse_config(v2), ConfigErrors);
  std::string wrong = kHeat;
  wrong += "nse: {speed_bound: 1}\n";
  CHECK_THROWS_AS(parse_config(wrong), ConfigErrors);
  CHECK_THROWS_AS(parse_config("schema_version: [1\n"), ConfigErrors);
}

TEST_CASE("solve writes artifacts and an oracle summary") {
  TempDir d;
  const auto cfg = d.write("burgers.yaml", kBurgers);
  SolveOverrides ov;
  ov.output_dir = (d.path / "out").string();
  std::ostringstream out, err;
  CHECK(cmd_solve(cfg, ov, out, err) == 0);
  const auto s = last_json_line(out.str());
  CHECK(s["oracle"]["max_error"].get<double>() <= 1e-4);
  for (const char* f : {"G.csf1", "u_x.csf1", "phi.csf1", "times.csv", "bounds.jsonl", "manifest.json", "oracle.json"}) {
    CHECK(fs::exists(d.path / "out" / f));
  }
  std::ifstream mf(d.path / "out" / "manifest.json");
  const auto m = nlohmann::json::parse(mf);
  CHECK(m["config"].get<std::string>() == kBurgers);
  CHECK(m["config_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(m.contains("timings_seconds"));
  CHECK(read_csf1_file((d.path / "out" / "u_x.csf1").string()).size() == 2);
}

TEST_CASE("zero velocity gives all-zero u") {
  TempDir d;
  const auto cfg = d.write("zero.yaml", R"yaml(schema_version: 1
problem: nse
grid: {boundary: periodic, points: [16, 16], length: [2*pi, 2*pi]}
series: {horizon: 1, time_steps: 4}
nse: {u0: ["0", "0"], speed_bound: 0}
)yaml");
  SolveOverrides ov;
  ov.output_dir = (d.path / "out").string();
  std::ostringstream out, err;
  CHECK(cmd_solve(cfg, ov, out, err) == 0);
  for (const char* f : {"u_x.csf1", "u_y.csf1"}) {
    for (const auto& rec : read_csf1_file((d.path / "out" / f).string())) CHECK(rec.max_abs() == 0.0);
  }
}

TEST_CASE("rotational u0 exits nonzero with the curl residual") {
  TempDir d;
  const auto cfg = d.write("rot.yaml", R"yaml(schema_version: 1
problem: nse
grid: {boundary: periodic, points: [32, 32], length: [2*pi, 2*pi]}
series: {horizon: 0.5}
nse: {u0: ["-sin(y)", "sin(x)"], speed_bound: 1.5}
)yaml");
  SolveOverrides ov;
  ov.output_dir = (d.path / "out").string();
  std::ostringstream out, err;
  CHECK(cmd_solve(cfg, ov, out, err) == 2);
  const auto e = last_json_line(err.str());
  CHECK(e["kind"] == "domain");
  CHECK(e["curl_residual"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("invalid config path and bad keys give exit 2 with a JSON error list") {
  std::ostringstream out, err;
  CHECK(cmd_solve("/nonexistent/x.yaml", {}, out, err) == 2);
  TempDir d;
  const auto cfg = d.write("bad.yaml", std::string(kHeat) + "bogus: 3\n");
  std::ostringstream err2;
  CHECK(cmd_solve(cfg, {}, out, err2) == 2);
  const auto e = last_json_line(err2.str());
  CHECK(e["errors"].size() == 1);
}

TEST_CASE("non-convergence and oracle mismatch map to exit codes 3 and 4") {
  TempDir d;
  std::string shallow = kHeat;
  shallow.replace(shallow.find("depth_max: 16"), 13, "depth_max: 3");
  const auto c3 = d.write("shallow.yaml", shallow);
  SolveOverrides ov;
  ov.output_dir = (d.path / "o3").string();
  std::ostringstream out, err;
  CHECK(cmd_solve(c3, ov, out, err) == 3);
  std::string wrong = kHeat;
  wrong.replace(wrong.find("exp(0.5*t)"), 10, "exp(0.6*t)");
  const auto c4 = d.write("wrong.yaml", wrong);
  ov.output_dir = (d.path / "o4").string();
  CHECK(cmd_solve(c4, ov, out, err) == 4);
}

TEST_CASE("repeated solves are byte-identical") {
  TempDir d;
  const auto cfg = d.write("b.yaml", kBurgers);
  std::ostringstream out, err;
  SolveOverrides a, b;
  a.output_dir = (d.path / "a").string();
  b.output_dir = (d.path / "b").string();
  REQUIRE(cmd_solve(cfg, a, out, err) == 0);
  REQUIRE(cmd_solve(cfg, b, out, err) == 0);
  for (const char* f : {"G.csf1", "u_x.csf1", "bounds.jsonl", "times.csv"}) {
    std::ifstream fa(d.path / "a" / f, std::ios::binary), fb(d.path / "b" / f, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("bench: depth sweep error tracks the analytic tail") {
  TempDir d;
  const auto cfg = d.write("bench.yaml", std::string(kHeat) + "bench: {depth: [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]}\n");
  SolveOverrides ov;
  ov.output_dir = (d.path / "out").string();
  std::ostringstream out, err;
  REQUIRE(cmd_bench(cfg, ov, out, err) == 0);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "axis,value,wall_seconds,terms,error,tail");
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string axis, value, wall, terms, error;
    std::getline(row, axis, ',');
    std::getline(row, value, ',');
    std::getline(row, wall, ',');
    std::getline(row, terms, ',');
    std::getline(row, error, ',');
    const int dep = std::stoi(value);
    double tail = 0.0, term = 1.0;
    for (int k = 1; k <= 40; ++k) {
      term *= 0.5 / k;
      if (k > dep) tail += term;
    }
    CAPTURE(dep);
    CHECK(std::stod(error) == doctest::Approx(tail).epsilon(0.1));
    CHECK(std::stoi(terms) == dep + 1);
    ++rows;
  }
  CHECK(rows == 12);
  CHECK(fs::exists(d.path / "out" / "bench.csv"));
}

TEST_CASE("bench: grid sweep timing grows with size; empty sweep is a usage error") {
  TempDir d;
  const auto cfg = d.write("g.yaml", std::string(kHeat) + "bench: {grid: [256, 2048, 16384]}\n");
  SolveOverrides ov;
  ov.output_dir = (d.path / "out").string();
  std::ostringstream out, err;
  REQUIRE(cmd_bench(cfg, ov, out, err) == 0);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  double prev = -1.0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string axis, value, wall;
    std::getline(row, axis, ',');
    std::getline(row, value, ',');
    std::getline(row, wall, ',');
    CHECK(std::stod(wall) > prev);
    prev = std::stod(wall);
  }
  const auto empty = d.write("e.yaml", kHeat);
  std::ostringstream err2;
  CHECK(cmd_bench(empty, ov, out, err2) == 2);
  CHECK(err2.str().find("sweep") != std::string::npos);
}

TEST_CASE("verify: bounds pass, injected underestimate fails, unknown suite is a usage error") {
  std::ostringstream out, err;
  VerifyOptions o;
  o.trials = 6;
  CHECK(cmd_verify("bounds", o, out, err) == 0);
  CHECK(last_json_line(out.str())["passed"] == true);
  o.m_scale = 0.5;
  std::ostringstream out2;
  CHECK(cmd_verify("bounds", o, out2, err) != 0);
  CHECK(out2.str().find("\"check\":\"ceiling_violations\"") != std::string::npos);
  std::ostringstream err3;
  CHECK(cmd_verify("nope", {}, out, err3) == 2);
  CHECK(is_suite("all"));
  CHECK_FALSE(is_suite("nope"));
}

TEST_CASE("inspect prints CSF1 headers") {
  TempDir d;
  const auto g = Grid::periodic_1d(8, 1.0);
  const auto path = (d.path / "f.csf1").string();
  write_csf1_file(path, {ScalarField::constant(g, 1.0), ScalarField::constant(g, 2.0)});
  std::ostringstream out, err;
  CHECK(cmd_inspect(path, out, err) == 0);
  const auto h = last_json_line(out.str());
  CHECK(h["record"] == 1);
  CHECK(h["dims"][0] == 8);
  CHECK(cmd_inspect((d.path / "missing").string(), out, err) != 0);
}

TEST_CASE("thread override from the environment") {
  const auto c = parse_config(kHeat);
  ::setenv("DUHAMEL_THREADS", "3", 1);
  CHECK(resolve_threads(c, 2) == 3);
  ::setenv("DUHAMEL_THREADS", "x", 1);
  CHECK_THROWS_AS(resolve_threads(c, std::nullopt), ConfigError);
  ::unsetenv("DUHAMEL_THREADS");
  CHECK(resolve_threads(c, 2) == 2);
  CHECK(resolve_threads(c, std::nullopt) == 1);
}
