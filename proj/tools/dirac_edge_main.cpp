#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "dirac_edge/config.hpp"
#include "dirac_edge/error.hpp"
#include "dirac_edge/experiments.hpp"

using namespace dirac_edge;

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

int run_command(const std::string& path, const std::string& out, double dt, std::size_t grid_n) {
  SimConfig cfg = load_config(path);
  if (!out.empty()) cfg.out_dir = out;
  if (dt > 0.0) cfg.dt = dt;
  if (grid_n > 0) {
    cfg.grid.nx = grid_n;
    cfg.grid.ny = grid_n;
  }
  validate_config(cfg);
  const Summary s = run_experiment(cfg);
  std::cout << s.text();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge wavepackets along magnetic domain walls"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  double dt = 0.0;
  std::size_t grid_n = 0;

  auto* run = app.add_subcommand("run", "run the experiment named in a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--dt", dt, "time step override")->check(CLI::PositiveNumber);
  run->add_option("--grid", grid_n, "grid points per axis")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list-experiments", "print registered experiments");

  std::string validate_path;
  auto* val = app.add_subcommand("validate", "parse and check a config file");
  val->add_option("config", validate_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*list) {
      for (const auto& e : experiments()) std::printf("%-22s %s\n", e.name.c_str(), e.description.c_str());
      return 0;
    }
    if (*val) {
      const SimConfig cfg = load_config(validate_path);
      std::cout << resolved_text(cfg);
      return 0;
    }
    return run_command(config_path, out_dir, dt, grid_n);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
