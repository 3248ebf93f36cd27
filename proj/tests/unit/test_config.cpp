#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "dirac_edge/config.hpp"
#include "dirac_edge/error.hpp"
#include "dirac_edge/experiments.hpp"
#include "dirac_edge/parallel.hpp"
#include "dirac_edge/spinor_grid.hpp"

using namespace dirac_edge;
using doctest::Approx;

namespace {

std::string message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("experiment defaults") {
  const SimConfig c = parse_config("[experiment]\nname = flat_slowdown\n");
  CHECK(c.grid.nx == 1024);
  CHECK(c.grid.ny == 1024);
  CHECK(c.epsilon == Approx(0.05));
  CHECK(c.sweep.size() == 5);

  const SimConfig ab = parse_config("[experiment]\nname = aharonov_bohm\n[potential]\nPhi = 3.0\n");
  CHECK(ab.potential.preset == "flux_line");
  CHECK(ab.potential.Phi == 3.0);
}

TEST_CASE("config errors name the line and suggest a key") {
  const std::string m = message("[experiment]\nname = flat_slowdown\nepsilonn = 0.1\n");
  CHECK(m.find("line 3") != std::string::npos);
  CHECK(m.find("epsilon") != std::string::npos);
  CHECK(m.find("did you mean 'epsilon'") != std::string::npos);

  CHECK(message("[experiment]\nname = flat_slowdown\nepsilon = 0.1x\n").find("line 3: malformed number") !=
        std::string::npos);
  CHECK(message("[experimnt]\nname = x\n").find("did you mean [experiment]") != std::string::npos);
  CHECK(message("[grid]\nnx = 64\n").find("name") != std::string::npos);
  CHECK(message("[experiment]\nname = no_such_thing\n").size() > 0);
}

TEST_CASE("validate_config ranges") {
  SimConfig c = parse_config("[experiment]\nname = flat_slowdown\n");
  CHECK_NOTHROW(validate_config(c));
  c.epsilon = 0.0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = parse_config("[experiment]\nname = flat_slowdown\n");
  c.grid.x1 = c.grid.x0;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
}

TEST_CASE("resolved text round-trips and the hash ignores the output dir") {
  SimConfig c = parse_config("[experiment]\nname = varying_B_transverse\nepsilon = 0.1\n[output]\ndir = \"a\"\n");
  const SimConfig back = parse_config(resolved_text(c));
  CHECK(resolved_text(back) == resolved_text(c));
  const auto h = config_hash(c);
  c.out_dir = "somewhere/else";
  CHECK(config_hash(c) == h);
  c.epsilon = 0.11;
  CHECK(config_hash(c) != h);
  CHECK(resolved_text(c, false).find("dir =") == std::string::npos);
}

TEST_CASE("levenshtein") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("same", "same") == 0);
}

TEST_CASE("shipped configs validate") {
  for (const char* dir : {DIRAC_EDGE_CONFIG_DIR "/ci", DIRAC_EDGE_CONFIG_DIR "/production"}) {
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      CAPTURE(e.path().string());
      CHECK_NOTHROW(validate_config(load_config(e.path().string())));
    }
  }
}

TEST_CASE("experiment registry") {
  CHECK(experiments().size() == 10);
  for (const auto& e : experiments()) CHECK(is_experiment(e.name));
  CHECK_FALSE(is_experiment("nope"));
}

TEST_CASE("snapshot round trip and bad magic") {
  SpinorGrid g(GridParams{8, 4, -1.0, 1.0, -2.0, 2.0}, 0.25, 0.2);
  for (std::size_t k = 0; k < g.grid.size(); ++k) {
    g.psi1[k] = {double(k), -0.5 * k};
    g.psi2[k] = {1.0 / (1.0 + k), 3.0};
  }
  std::stringstream ss;
  write_snapshot(ss, g);
  const SpinorGrid r = read_snapshot(ss);
  CHECK(same_grid(r.grid, g.grid));
  CHECK(r.t == g.t);
  CHECK(r.epsilon == g.epsilon);
  CHECK(r.psi1 == g.psi1);
  CHECK(r.psi2 == g.psi2);

  std::stringstream bad("XXXXgarbage");
  CHECK_THROWS_AS(read_snapshot(bad), std::runtime_error);
  std::string truncated = ss.str().substr(0, 40);
  std::stringstream tr(truncated);
  CHECK_THROWS_AS(read_snapshot(tr), std::runtime_error);
}

TEST_CASE("summary keys") {
  Summary s;
  s.add("a", 1.5);
  s.add_text("b", "x");
  CHECK(s.has("a"));
  CHECK(s.number("a") == 1.5);
  CHECK_THROWS_AS(s.number("zz"), std::out_of_range);
  CHECK(s.text().find("b = x") != std::string::npos);
}

TEST_CASE("results do not depend on DIRAC_EDGE_THREADS") {
  SimConfig c = parse_config(
      "[experiment]\nname = varying_B_ramp\nepsilon = 0.2\ny0 = 2, 0\nt_max = 0.5\ndt = 0.01\n"
      "[grid]\nnx = 64\nny = 64\nx_min = -8\nx_max = 8\ny_min = -8\ny_max = 8\n");
  const auto base = std::filesystem::temp_directory_path() / "dirac_edge_threads_test";
  std::filesystem::remove_all(base);
  setenv("DIRAC_EDGE_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  c.out_dir = (base / "one").string();
  const std::string one = run_experiment(c).text();
  setenv("DIRAC_EDGE_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  c.out_dir = (base / "four").string();
  const std::string four = run_experiment(c).text();
  unsetenv("DIRAC_EDGE_THREADS");
  CHECK(one == four);
  std::filesystem::remove_all(base);
}
