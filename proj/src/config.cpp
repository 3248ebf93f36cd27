#include "dirac_edge/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dirac_edge/error.hpp"
#include "dirac_edge/experiments.hpp"

namespace dirac_edge {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '"') quoted = !quoted;
    if (!quoted && (s[k] == '#' || s[k] == ';')) return std::string(s.substr(0, k));
  }
  return std::string(s);
}

std::string unquote(const std::string& v, int line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  if (v.find('"') != std::string::npos) fail(line, "unbalanced quotes in '" + v + "'");
  return v;
}

double to_number(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (v.empty()) fail(line, "expected a number, got an empty value");
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
    fail(line, "malformed number '" + v + "'");
  }
  return d;
}

std::vector<double> to_list(const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_number(item, line));
  return out;
}

std::size_t to_count(const std::string& v, int line) {
  const double d = to_number(v, line);
  if (d < 1.0 || d != std::floor(d) || d > 1e6) fail(line, "expected a positive integer, got '" + v + "'");
  return static_cast<std::size_t>(d);
}

using Setter = std::function<void(SimConfig&, const std::string&, int)>;
using Schema = std::map<std::string, std::map<std::string, Setter>>;

Setter number(double SimConfig::*field) {
  return [field](SimConfig& c, const std::string& v, int line) { c.*field = to_number(v, line); };
}

const Schema& schema() {
  static const Schema s = [] {
    Schema m;
    auto& e = m["experiment"];
    e["name"] = [](SimConfig& c, const std::string& v, int) { c.experiment = v; };
    e["epsilon"] = number(&SimConfig::epsilon);
    e["sigma"] = number(&SimConfig::sigma);
    e["profile_file"] = [](SimConfig& c, const std::string& v, int) { c.profile_file = v; };
    e["t_max"] = number(&SimConfig::t_max);
    e["dt"] = number(&SimConfig::dt);
    e["cadence"] = number(&SimConfig::cadence);
    e["q"] = number(&SimConfig::q);
    e["sweep"] = [](SimConfig& c, const std::string& v, int line) { c.sweep = to_list(v, line); };
    e["y0"] = [](SimConfig& c, const std::string& v, int line) {
      const auto xs = to_list(v, line);
      if (xs.size() != 2) fail(line, "y0 needs two comma-separated numbers");
      c.y0 = {xs[0], xs[1]};
    };

    auto& w = m["wall"];
    w["preset"] = [](SimConfig& c, const std::string& v, int) { c.wall.preset = v; };
    w["tilt"] = [](SimConfig& c, const std::string& v, int line) { c.wall.tilt = to_number(v, line); };
    w["R"] = [](SimConfig& c, const std::string& v, int line) { c.wall.R = to_number(v, line); };
    w["m"] = [](SimConfig& c, const std::string& v, int line) { c.wall.m = to_number(v, line); };

    auto& p = m["potential"];
    p["preset"] = [](SimConfig& c, const std::string& v, int) { c.potential.preset = v; };
    p["B0"] = [](SimConfig& c, const std::string& v, int line) { c.potential.B0 = to_number(v, line); };
    p["Phi"] = [](SimConfig& c, const std::string& v, int line) { c.potential.Phi = to_number(v, line); };
    p["B2"] = [](SimConfig& c, const std::string& v, int line) { c.potential.B2 = to_number(v, line); };
    p["core_radius"] = [](SimConfig& c, const std::string& v, int line) {
      c.potential.core_radius = to_number(v, line);
    };
    p["period"] = [](SimConfig& c, const std::string& v, int line) { c.potential.period = to_number(v, line); };

    auto& g = m["grid"];
    g["nx"] = [](SimConfig& c, const std::string& v, int line) { c.grid.nx = to_count(v, line); };
    g["ny"] = [](SimConfig& c, const std::string& v, int line) { c.grid.ny = to_count(v, line); };
    g["x_min"] = [](SimConfig& c, const std::string& v, int line) { c.grid.x0 = to_number(v, line); };
    g["x_max"] = [](SimConfig& c, const std::string& v, int line) { c.grid.x1 = to_number(v, line); };
    g["y_min"] = [](SimConfig& c, const std::string& v, int line) { c.grid.y0 = to_number(v, line); };
    g["y_max"] = [](SimConfig& c, const std::string& v, int line) { c.grid.y1 = to_number(v, line); };
    g["window"] = number(&SimConfig::window);

    auto& o = m["output"];
    o["dir"] = [](SimConfig& c, const std::string& v, int) { c.out_dir = v; };
    o["snapshot_every"] = number(&SimConfig::snapshot_every);
    return m;
  }();
  return s;
}

std::string nearest(const std::string& word, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = static_cast<std::size_t>(-1);
  for (const auto& c : candidates) {
    const std::size_t d = levenshtein(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<Entry> tokenize(std::string_view text) {
  std::vector<Entry> out;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().contains(section)) {
        std::vector<std::string> names;
        for (const auto& [k, _] : schema()) names.push_back(k);
        fail(line_no, "unknown section [" + section + "], did you mean [" + nearest(section, names) + "]?");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value', got '" + line + "'");
    if (section.empty()) fail(line_no, "key outside of any section");
    Entry e{section, trim(line.substr(0, eq)), unquote(trim(line.substr(eq + 1)), line_no), line_no};
    const auto& keys = schema().at(section);
    if (!keys.contains(e.key)) {
      std::vector<std::string> names;
      for (const auto& [k, _] : keys) names.push_back(k);
      fail(line_no, "unknown key '" + e.key + "' in [" + section + "], did you mean '" + nearest(e.key, names) +
                        "'?");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

SimConfig parse_config(std::string_view text) {
  const std::vector<Entry> entries = tokenize(text);
  const Entry* name = nullptr;
  for (const auto& e : entries) {
    if (e.section == "experiment" && e.key == "name") name = &e;
  }
  if (!name) throw ConfigError("line 0: missing required key 'name' in [experiment]");

  SimConfig cfg;
  cfg.experiment = name->value;
  try {
    apply_experiment_defaults(cfg);
  } catch (const ConfigError& err) {
    fail(name->line, err.what());
  }
  for (const auto& e : entries) schema().at(e.section).at(e.key)(cfg, e.value, e.line);
  if (cfg.potential.preset == "tilted_constant") cfg.potential.tilt = cfg.wall.tilt;
  validate_config(cfg);
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const SimConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(is_experiment(c.experiment), "unknown experiment '" + c.experiment + "'");
  need(c.epsilon > 0.0 && c.epsilon <= 1.0, "epsilon must lie in (0, 1]");
  need(c.sigma > 0.0, "sigma must be positive");
  need(c.t_max >= 0.0, "t_max must be non-negative");
  need(c.dt >= 0.0, "dt must be non-negative");
  need(c.cadence > 0.0, "cadence must be positive");
  need(c.q == 0.5 || c.q == 1.0, "q must be 0.5 or 1");
  need(is_finite(c.y0), "y0 must be finite");
  need(c.grid.nx >= 8 && c.grid.ny >= 8, "grid needs at least 8 points per axis");
  need(c.grid.x1 > c.grid.x0 && c.grid.y1 > c.grid.y0, "grid extents must be increasing");
  need(c.window > 0.0 && c.window < 0.5, "window must lie in (0, 0.5)");
  need(c.snapshot_every >= 0.0, "snapshot_every must be non-negative");
  need(std::find(wall_presets().begin(), wall_presets().end(), c.wall.preset) != wall_presets().end(),
       "unknown wall preset '" + c.wall.preset + "'");
  need(std::find(potential_presets().begin(), potential_presets().end(), c.potential.preset) !=
           potential_presets().end(),
       "unknown potential preset '" + c.potential.preset + "'");
  need(c.wall.R > 0.0, "wall R must be positive");
  need(c.wall.m >= 2.0, "wall m must be >= 2");
  need(c.potential.core_radius > 0.0, "core_radius must be positive");
  need(c.potential.period > 0.0, "period must be positive");
}

std::string resolved_text(const SimConfig& c, bool include_output_dir) {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "name = \"" << c.experiment << "\"\n";
  os << "epsilon = " << fmt(c.epsilon) << "\n";
  os << "y0 = " << fmt(c.y0.x) << ", " << fmt(c.y0.y) << "\n";
  os << "sigma = " << fmt(c.sigma) << "\n";
  if (!c.profile_file.empty()) os << "profile_file = \"" << c.profile_file << "\"\n";
  os << "t_max = " << fmt(c.t_max) << "\n";
  os << "dt = " << fmt(c.dt) << "\n";
  os << "cadence = " << fmt(c.cadence) << "\n";
  os << "q = " << fmt(c.q) << "\n";
  if (!c.sweep.empty()) {
    os << "sweep = ";
    for (std::size_t k = 0; k < c.sweep.size(); ++k) os << (k ? ", " : "") << fmt(c.sweep[k]);
    os << "\n";
  }
  os << "\n[wall]\n";
  os << "preset = \"" << c.wall.preset << "\"\n";
  os << "tilt = " << fmt(c.wall.tilt) << "\n";
  os << "R = " << fmt(c.wall.R) << "\n";
  os << "m = " << fmt(c.wall.m) << "\n";
  os << "\n[potential]\n";
  os << "preset = \"" << c.potential.preset << "\"\n";
  os << "B0 = " << fmt(c.potential.B0) << "\n";
  os << "Phi = " << fmt(c.potential.Phi) << "\n";
  os << "B2 = " << fmt(c.potential.B2) << "\n";
  os << "core_radius = " << fmt(c.potential.core_radius) << "\n";
  os << "period = " << fmt(c.potential.period) << "\n";
  os << "\n[grid]\n";
  os << "nx = " << c.grid.nx << "\n";
  os << "ny = " << c.grid.ny << "\n";
  os << "x_min = " << fmt(c.grid.x0) << "\n";
  os << "x_max = " << fmt(c.grid.x1) << "\n";
  os << "y_min = " << fmt(c.grid.y0) << "\n";
  os << "y_max = " << fmt(c.grid.y1) << "\n";
  os << "window = " << fmt(c.window) << "\n";
  os << "\n[output]\n";
  if (include_output_dir) os << "dir = \"" << c.out_dir << "\"\n";
  os << "snapshot_every = " << fmt(c.snapshot_every) << "\n";
  return os.str();
}

std::uint64_t config_hash(const SimConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : resolved_text(cfg, false)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace dirac_edge
