#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "duhamel/app/commands.hpp"

namespace app = duhamel::app;

int main(int argc, char** argv) {
  CLI::App cli{"duhamel: convolution-series solver for potential-flow Navier-Stokes"};
  cli.set_version_flag("--version", app::kVersion);
  cli.require_subcommand(1);

  std::string config, out_dir, suite, file;
  std::size_t threads = 0;
  app::VerifyOptions vopt;

  auto* solve = cli.add_subcommand("solve", "solve a configured problem, write fields and reports");
  solve->add_option("config", config, "YAML run config")->required();
  solve->add_option("-o,--out", out_dir, "output directory (overrides the config)");
  solve->add_option("-j,--threads", threads, "worker threads (DUHAMEL_THREADS wins)");

  auto* verify = cli.add_subcommand("verify", "run a property/oracle suite");
  verify->add_option("suite", suite, "bounds | oracles | burgers | parabolic | manufactured | all")->required();
  verify->add_option("--seed", vopt.seed, "RNG seed");
  verify->add_option("--trials", vopt.trials, "random trials for the bounds suite");
  verify->add_option("--inject-m-scale", vopt.m_scale, "multiply M in the ceiling checks by this factor");

  auto* bench = cli.add_subcommand("bench", "timing/error table over the config's sweep axes");
  bench->add_option("config", config, "YAML run config")->required();
  bench->add_option("-o,--out", out_dir, "output directory (overrides the config)");
  bench->add_option("-j,--threads", threads, "worker threads (DUHAMEL_THREADS wins)");

  auto* inspect = cli.add_subcommand("inspect", "print CSF1 record headers");
  inspect->add_option("file", file, "CSF1 file")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  app::SolveOverrides ov;
  if (!out_dir.empty()) ov.output_dir = out_dir;
  if (threads > 0) ov.threads = threads;

  if (*solve) return app::cmd_solve(config, ov, std::cout, std::cerr);
  if (*verify) return app::cmd_verify(suite, vopt, std::cout, std::cerr);
  if (*bench) return app::cmd_bench(config, ov, std::cout, std::cerr);
  if (*inspect) return app::cmd_inspect(file, std::cout, std::cerr);
  return 2;
}
