#include "duhamel/app/commands.hpp"

#include <fftw3.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include "json.hpp"
#include <sstream>

#include "duhamel/cole_hopf.hpp"
#include "duhamel/field_io.hpp"
#include "duhamel/parallel.hpp"
#include "duhamel/simd/kernels.hpp"

namespace duhamel::app {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config:
      return "config";
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Numerical:
      return "numerical";
    case ErrorKind::Oracle:
      return "oracle";
  }
  return "unknown";
}

json run_summary(const RunConfig& cfg, const RunResult& r) {
  json s;
  s["problem"] = problem_name(cfg.kind);
  s["truncation_depth"] = r.truncation_depth;
  s["converged"] = r.converged;
  s["under_resolved"] = r.under_resolved;
  s["last_relative_term"] = r.last_relative_term;
  s["tail_estimate"] = r.tail_estimate;
  json b = json::object();
  for (const auto& rep : r.bounds) {
    b[rep.check] = {{"violations", rep.violations()}, {"max_violation", rep.max_violation()}};
  }
  s["bounds"] = b;
  if (r.oracle_error) {
    s["oracle"] = {{"max_error", *r.oracle_error},
                   {"tolerance", r.oracle_tolerance},
                   {"passed", r.oracle_passed()}};
  }
  if (r.residual) s["residual_linf"] = *r.residual;
  for (const auto& [k, v] : r.extra) s[k] = v;
  return s;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << text;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int report_error(const std::exception& e, std::ostream& err) {
  json payload;
  payload["status"] = "error";
  int code = 1;
  if (const auto* ce = dynamic_cast<const ConfigErrors*>(&e)) {
    payload["kind"] = "config";
    payload["errors"] = ce->errors();
    code = 2;
  } else if (const auto* de = dynamic_cast<const Error*>(&e)) {
    payload["kind"] = kind_name(de->kind());
    payload["errors"] = json::array({de->what()});
    code = exit_code(de->kind());
    if (const auto* curl = dynamic_cast<const CurlError*>(&e)) {
      payload["curl_residual"] = curl->residual();
      payload["curl_tolerance"] = curl->tolerance();
    }
  } else {
    payload["kind"] = "internal";
    payload["errors"] = json::array({e.what()});
  }
  err << payload.dump() << "\n";
  return code;
}

std::size_t resolve_threads(const RunConfig& cfg, std::optional<std::size_t> override_threads) {
  if (const char* env = std::getenv("DUHAMEL_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError("DUHAMEL_THREADS: expected a positive integer");
    return static_cast<std::size_t>(v);
  }
  return override_threads.value_or(cfg.threads);
}

int cmd_solve(const std::string& config_path, const SolveOverrides& ov, std::ostream& out,
              std::ostream& err) {
  try {
    const auto t_start = std::chrono::steady_clock::now();
    const RunConfig cfg = load_config(config_path);
    const std::size_t threads = resolve_threads(cfg, ov.threads);
    set_thread_count(threads);
    RunResult r = run(cfg);

    const auto t_write = std::chrono::steady_clock::now();
    const fs::path dir = ov.output_dir.value_or(cfg.output_dir);
    fs::create_directories(dir);
    json outputs = json::array();
    for (const auto& [name, traj] : r.fields) {
      write_csf1_file((dir / (name + ".csf1")).string(), traj.snapshots());
      outputs.push_back(name + ".csf1");
      if (cfg.write_csv) {
        std::ofstream os(dir / (name + "_final.csv"), std::ios::binary);
        write_csv(os, traj.back(), name);
        outputs.push_back(name + "_final.csv");
      }
    }
    {
      std::ostringstream ts;
      ts << "index,time\n";
      for (std::size_t i = 0; i < r.times.size(); ++i) ts << i << "," << format_double(r.times[i]) << "\n";
      write_text(dir / "times.csv", ts.str());
      outputs.push_back("times.csv");
    }
    {
      std::ostringstream bs;
      for (const auto& rep : r.bounds) rep.write_jsonl(bs);
      write_text(dir / "bounds.jsonl", bs.str());
      outputs.push_back("bounds.jsonl");
    }
    const json summary = run_summary(cfg, r);
    if (r.oracle_error) {
      write_text(dir / "oracle.json", summary["oracle"].dump(2) + "\n");
      outputs.push_back("oracle.json");
    }
    r.timings["write"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_write).count();
    r.timings["total"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    json m;
    m["tool"] = "duhamel";
    m["version"] = kVersion;
    m["schema_version"] = cfg.schema_version;
    m["config_path"] = config_path;
    m["config_hash"] = "fnv1a64:" + hex64(cfg.hash);
    m["config"] = cfg.text;
    m["seed"] = cfg.seed;
    m["threads"] = threads;
    m["isa"] = std::string(simd::isa_name(simd::active_isa()));
    m["compiler"] = __VERSION__;
    m["fftw"] = std::string(fftw_version);
    m["outputs"] = outputs;
    m["summary"] = summary;
    m["timings_seconds"] = r.timings;
    m["exit_code"] = r.exit_code();
    write_text(dir / "manifest.json", m.dump(2) + "\n");

    json line = summary;
    line["status"] = r.exit_code() == 0 ? "ok" : "failed";
    line["output_dir"] = dir.string();
    out << line.dump() << "\n";
    if (!r.converged) err << "series did not converge within depth_max\n";
    if (!r.bounds_passed()) err << "bound check violated\n";
    if (!r.oracle_passed()) err << "oracle mismatch: " << *r.oracle_error << " > " << r.oracle_tolerance << "\n";
    return r.exit_code();
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

int cmd_bench(const std::string& config_path, const SolveOverrides& ov, std::ostream& out,
              std::ostream& err) {
  try {
    const RunConfig cfg = load_config(config_path);
    if (cfg.bench.empty()) {
      throw ConfigErrors({"bench: at least one sweep axis (depth, grid, time_steps) required"});
    }
    set_thread_count(resolve_threads(cfg, ov.threads));
    std::ostringstream csv;
    csv << "axis,value,wall_seconds,terms,error,tail\n";
    auto point = [&](const std::string& axis, std::size_t value, RunConfig c) {
      const auto t0 = std::chrono::steady_clock::now();
      const RunResult r = run(c);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      csv << axis << "," << value << "," << format_double(wall) << "," << r.truncation_depth + 1 << ","
          << (r.oracle_error ? format_double(*r.oracle_error) : "nan") << ","
          << format_double(r.tail_estimate) << "\n";
    };
    for (std::size_t d : cfg.bench.depth) {
      RunConfig c = cfg;
      c.series.depth_max = d;
      // the sweep measures truncation at exactly depth d
      c.series.rel_tolerance = SeriesOptions::kMinRelTolerance;
      point("depth", d, c);
    }
    for (std::size_t n : cfg.bench.grid) {
      RunConfig c = cfg;
      c.grid = cfg.grid.with_points(n);
      point("grid", n, c);
    }
    for (std::size_t n : cfg.bench.time_steps) {
      RunConfig c = cfg;
      c.series.time_steps = n;
      point("time_steps", n, c);
    }
    out << csv.str();
    const fs::path dir = ov.output_dir.value_or(cfg.output_dir);
    fs::create_directories(dir);
    write_text(dir / "bench.csv", csv.str());
    return 0;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

int cmd_inspect(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const auto headers = read_csf1_headers(path);
    json rows = json::array();
    for (std::size_t i = 0; i < headers.size(); ++i) {
      const auto& h = headers[i];
      rows.push_back({{"record", i},
                      {"dims", h.dims},
                      {"spacing", h.spacing},
                      {"origin", h.origin},
                      {"boundary", h.boundary == Boundary::Periodic ? "periodic" : "free-space"},
                      {"values", h.value_count()}});
    }
    for (const auto& r : rows) out << r.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

}  // namespace duhamel::app
