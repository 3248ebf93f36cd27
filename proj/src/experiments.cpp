#include "dirac_edge/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dirac_edge/assembler.hpp"
#include "dirac_edge/coefficients.hpp"
#include "dirac_edge/diagnostics.hpp"
#include "dirac_edge/dirac_solver.hpp"
#include "dirac_edge/error.hpp"
#include "dirac_edge/kernels.hpp"
#include "dirac_edge/presets.hpp"
#include "dirac_edge/quadrature.hpp"

namespace dirac_edge {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string tag_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void set_grid(SimConfig& c, std::size_t nx, std::size_t ny, double x0, double x1, double y0, double y1) {
  c.grid = GridParams{nx, ny, x0, x1, y0, y1};
}

using Defaults = std::function<void(SimConfig&)>;

struct Registered {
  ExperimentInfo info;
  Defaults defaults;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r{
      {{"flat_slowdown", "flat wall, constant B swept; COM speeds against (1+B^2)^(-1/2)"},
       [](SimConfig& c) {
         c.epsilon = 0.05;
         c.wall.preset = "flat";
         c.potential.preset = "constant";
         c.potential.B0 = 1.0;
         c.sweep = {0.0, 0.5, 1.0, 1.5, 2.0};
         c.y0 = {4.0, 0.0};
         c.t_max = 6.0;
         c.cadence = 0.1;
         set_grid(c, 1024, 1024, -8.0, 8.0, -8.0, 8.0);
       }},
      {{"flat_exact_oracle", "flat wall, B=1; solver against the exact translating solution, dt refinement"},
       [](SimConfig& c) {
         c.epsilon = 0.2;
         c.wall.preset = "flat";
         c.potential.preset = "constant";
         c.potential.B0 = 1.0;
         c.sweep = {0.04, 0.02, 0.01};
         c.y0 = {1.0, 0.0};
         c.t_max = 1.0;
         c.cadence = 0.04;
         set_grid(c, 1024, 1024, -8.0, 8.0, -8.0, 8.0);
       }},
      {{"circle_dispersion", "circle wall, B=1/sqrt(2); max amplitude against nu_t over one revolution"},
       [](SimConfig& c) {
         c.epsilon = 0.05;
         c.wall.preset = "circle_quadratic";
         c.potential.preset = "constant_circle";
         c.potential.B0 = 1.0 / std::sqrt(2.0);
         c.y0 = {1.0, 0.0};
         c.cadence = 0.05;
         set_grid(c, 1024, 1024, -2.5, 2.5, -2.5, 2.5);
       }},
      {{"no_dispersion", "quartic circle wall, B=1; nu_t vanishes and the amplitude is preserved"},
       [](SimConfig& c) {
         c.epsilon = 0.05;
         c.wall.preset = "circle_power_m";
         c.wall.m = 4.0;
         c.potential.preset = "constant_circle";
         c.potential.B0 = 1.0;
         c.y0 = {1.0, 0.0};
         c.cadence = 0.05;
         set_grid(c, 1024, 1024, -3.0, 3.0, -3.0, 3.0);
       }},
      {{"aharonov_bohm", "circle wall around a flux line; center phase winding over one revolution"},
       [](SimConfig& c) {
         c.epsilon = 0.075;
         c.wall.preset = "circle_quadratic";
         c.potential.preset = "flux_line";
         c.potential.Phi = 2.0 * kPi;
         c.sweep = {2.0 * kPi, 0.0};
         c.y0 = {1.0, 0.0};
         c.cadence = 0.02;
         set_grid(c, 1024, 1024, -3.5, 3.5, -3.5, 3.5);
       }},
      {{"varying_B_ramp", "flat wall through a tanh ramp in B; compression and the j*gamma identity"},
       [](SimConfig& c) {
         c.epsilon = 0.05;
         c.wall.preset = "flat";
         c.potential.preset = "tanh_ramp";
         c.potential.B0 = 1.0;
         c.y0 = {5.0, 0.0};
         c.t_max = 8.0;
         c.cadence = 0.1;
         set_grid(c, 1024, 1024, -6.0, 8.0, -7.0, 7.0);
       }},
      {{"varying_B_transverse", "flat wall, B = 1 + 4 B2 x2 swept over B2; power-law amplitude decay"},
       [](SimConfig& c) {
         c.epsilon = 0.075;
         c.wall.preset = "flat";
         c.potential.preset = "transverse_linear";
         c.potential.B0 = 1.0;
         c.sweep = {0.0, 0.5, 1.0};
         c.y0 = {4.0, 0.0};
         c.t_max = 6.0;
         c.cadence = 0.1;
         set_grid(c, 1024, 512, -6.0, 14.0, -4.0, 4.0);
       }},
      {{"varying_B_periodic", "flat wall, B = 1 + 4 cos(2 pi x1/15) x2; reversible amplitude drop"},
       [](SimConfig& c) {
         c.wall.preset = "flat";
         c.potential.preset = "periodic";
         c.potential.B0 = 1.0;
         c.potential.B2 = 1.0;
         c.potential.period = 15.0;
         c.epsilon = 0.1;
         // cos(2 pi x1/15) = 0 at the start; one period to x1 = -11.25
         c.y0 = {3.75, 0.0};
         c.t_max = 15.0 * std::sqrt(2.0);
         c.cadence = 0.1;
         set_grid(c, 2048, 512, -24.0, 24.0, -4.0, 4.0);
       }},
      {{"epsilon_convergence", "circle wall, constant B; sup-in-time L2 error against the leading term vs epsilon"},
       [](SimConfig& c) {
         c.epsilon = 0.2;
         c.wall.preset = "circle_quadratic";
         c.potential.preset = "constant_circle";
         c.potential.B0 = 1.0 / std::sqrt(2.0);
         c.sweep = {0.2, 0.1, 0.05};
         c.y0 = {1.0, 0.0};
         c.t_max = 1.0;
         c.cadence = 0.05;
         set_grid(c, 512, 512, -3.5, 3.5, -3.5, 3.5);
       }},
      {{"coefficient_dump", "coefficient track and envelope consistency checks, no PDE run"},
       [](SimConfig& c) {
         c.epsilon = 0.2;
         c.wall.preset = "circle_quadratic";
         c.potential.preset = "constant_circle";
         c.potential.B0 = 1.0 / std::sqrt(2.0);
         c.y0 = {1.0, 0.0};
         c.cadence = 0.05;
       }},
  };
  return r;
}

const Registered& lookup(const std::string& name) {
  for (const auto& r : registry()) {
    if (r.info.name == name) return r;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

// ---------------------------------------------------------------------------

struct Scenario {
  DomainWall wall;
  MagneticPotential field;
  WavepacketSpec spec;
};

Scenario make_scenario(const SimConfig& cfg) {
  PotentialParams pp = cfg.potential;
  pp.tilt = cfg.wall.tilt;
  Scenario s{make_wall(cfg.wall), make_potential(pp), make_wavepacket(cfg)};
  s.spec.y0 = project_to_interface(s.wall, cfg.y0);
  return s;
}

// Track spacing dividing the observation cadence, at most 0.01.
double track_step(double cadence) { return cadence / std::ceil(cadence / 0.01 - 1e-9); }

double rounded_up(double t, double step) { return step * std::ceil(t / step - 1e-9); }

struct PacketRun {
  CoefficientTrack track;
  ObservableSeries series;
  std::vector<double> asym_amp;  // max |Ψ₀(t)| at each sample
  double dt = 0.0;
  bool cfl_warning = false;
};

struct RunSettings {
  std::string tag;
  double t_max = 0.0;
  double dt = 0.0;  // 0: solver default rounded to divide the cadence
  double q = 0.5;
  bool reference = true;
  /// Initial state override; the leading-order Ψ₀(0) otherwise.
  std::function<SpinorGrid()> initial;
};

// Re-raises the active exception with a prefix, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string& ctx) {
  try {
    throw;
  } catch (const BoundaryContamination& e) {
    throw BoundaryContamination(ctx + e.what());
  } catch (const WindowError& e) {
    throw WindowError(ctx + e.what());
  } catch (const GridResolutionError& e) {
    throw GridResolutionError(ctx + e.what());
  } catch (const GridMismatch& e) {
    throw GridMismatch(ctx + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(ctx + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(ctx + e.what());
  }
}

std::string file_tag(const std::string& tag) { return tag.empty() ? std::string() : "_" + tag; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

PacketRun run_packet(const SimConfig& cfg, const Scenario& sc, const RunSettings& rs) {
  PacketRun out;
  const double cadence = cfg.cadence;
  const double t_max = rounded_up(rs.t_max, cadence);
  out.track = build_track(sc.wall, sc.field, sc.spec.y0, t_max, track_step(cadence));

  SolverOptions so;
  so.window_fraction = cfg.window;
  so.dt = rs.dt;
  if (so.dt <= 0.0) {
    DiracSolver probe(sc.wall, sc.field, sc.spec.epsilon, cfg.grid, so);
    so.dt = cadence / std::ceil(cadence / probe.dt() - 1e-9);
  } else {
    const double steps = cadence / so.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * steps) {
      throw ConfigError("dt = " + tag_number(so.dt) + " does not divide the cadence " + tag_number(cadence));
    }
  }
  DiracSolver solver(sc.wall, sc.field, sc.spec.epsilon, cfg.grid, so);
  out.dt = solver.dt();
  out.cfl_warning = solver.cfl_warning();

  AssemblyOptions ao;
  ao.q = rs.q;
  solver.set_state(rs.initial ? rs.initial() : assemble_leading_order(sc.spec, out.track, 0.0, cfg.grid, ao));

  AssemblyOptions loose = ao;
  loose.window_tolerance = std::numeric_limits<double>::infinity();
  ReferenceField reference;
  if (rs.reference) {
    reference = [&](double t) {
      SpinorGrid g = assemble_leading_order(sc.spec, out.track, t, cfg.grid, loose);
      out.asym_amp.push_back(max_amplitude(g));
      return g;
    };
  }

  const fs::path dir(cfg.out_dir);
  std::vector<Observer> observers;
  double next_snapshot = 0.0;
  std::size_t snap_index = 0;
  if (cfg.snapshot_every > 0.0) {
    observers.push_back([&](const SpinorGrid& g) {
      if (g.t + 1e-9 < next_snapshot) return;
      char name[128];
      std::snprintf(name, sizeof name, "snapshot%s_%04zu.dewp", file_tag(rs.tag).c_str(), snap_index++);
      write_snapshot((dir / name).string(), g);
      next_snapshot += cfg.snapshot_every;
    });
  }
  try {
    out.series = evolve(solver, t_max, cadence, observers, reference);
  } catch (const Error&) {
    rethrow_with_context(rs.tag.empty() ? std::string() : rs.tag + ": ");
  }

  {
    std::ofstream os(dir / ("observables" + file_tag(rs.tag) + ".csv"), std::ios::binary);
    write_observables_csv(os, out.series);
  }
  {
    std::ofstream os(dir / ("track" + file_tag(rs.tag) + ".csv"), std::ios::binary);
    write_track_csv(os, out.track);
  }
  return out;
}

std::vector<double> nu_at_samples(const PacketRun& run) {
  std::vector<double> nu;
  for (double t : run.series.t) nu.push_back(run.track.at(t).nu);
  return nu;
}

double max_of(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) {
    if (!std::isnan(x)) m = std::max(m, x);
  }
  return m;
}

double min_of(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) {
    if (!std::isnan(x)) m = std::min(m, x);
  }
  return m;
}

// Power-law fit that reports NaN (with the point count) instead of throwing
// when the window holds fewer than 8 samples.
double fit_or_nan(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi,
                  std::size_t& points) {
  points = 0;
  for (double v : x) {
    if (v >= lo && v <= hi) ++points;
  }
  if (points < 8 || !(hi > lo)) return kNaN;
  return fit_power_law(x, y, lo, hi);
}

double track_speed(const CoefficientTrack& track) {
  std::vector<double> t, arc;
  double s = 0.0;
  for (std::size_t k = 0; k < track.size(); ++k) {
    if (k > 0) s += norm(track[k].y - track[k - 1].y);
    t.push_back(track[k].t);
    arc.push_back(s);
  }
  return least_squares_slope(t, arc);
}

double first_valid(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isnan(x)) return x;
  }
  return kNaN;
}

double last_valid(const std::vector<double>& v) {
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (!std::isnan(*it)) return *it;
  }
  return kNaN;
}

// ---------------------------------------------------------------------------

void run_flat_slowdown(const SimConfig& cfg, Summary& out) {
  const std::vector<double> fields = cfg.sweep.empty() ? std::vector<double>{cfg.potential.B0} : cfg.sweep;
  double worst_pde = 0.0, worst_pair = 0.0;
  for (double b : fields) {
    SimConfig c = cfg;
    c.potential.B0 = b;
    const Scenario sc = make_scenario(c);
    RunSettings rs;
    rs.tag = "B0_" + tag_number(b);
    rs.t_max = cfg.t_max;
    rs.dt = cfg.dt;
    rs.q = cfg.q;
    const PacketRun run = run_packet(c, sc, rs);
    const double expected = 1.0 / std::sqrt(1.0 + b * b);
    const double pde = speed_estimate(run.series, 0.0, run.series.t.back());
    const double asym = track_speed(run.track);
    const double rel_pde = std::abs(pde - expected) / expected;
    const double pair = std::abs(pde - asym) / asym;
    worst_pde = std::max(worst_pde, rel_pde);
    worst_pair = std::max(worst_pair, pair);
    const std::string k = "B0=" + tag_number(b) + ".";
    out.add(k + "speed_expected", expected);
    out.add(k + "speed_pde", pde);
    out.add(k + "speed_asymptotic", asym);
    out.add(k + "rel_err_pde", rel_pde);
    out.add(k + "rel_diff_pde_asymptotic", pair);
    out.add(k + "dt", run.dt);
  }
  out.add("max_rel_err_pde", worst_pde);
  out.add("max_rel_diff_pde_asymptotic", worst_pair);
}

void run_flat_exact_oracle(const SimConfig& cfg, Summary& out) {
  const Scenario sc = make_scenario(cfg);
  const double b = cfg.potential.B0;
  const std::vector<double> dts = cfg.sweep.empty() ? std::vector<double>{0.04, 0.02, 0.01} : cfg.sweep;
  std::vector<double> errs;
  for (double dt : dts) {
    SolverOptions so;
    so.dt = dt;
    so.window_fraction = cfg.window;
    DiracSolver solver(sc.wall, sc.field, sc.spec.epsilon, cfg.grid, so);
    solver.set_state(exact_flat_solution(b, sc.spec, 0.0, cfg.grid));
    const std::size_t steps = static_cast<std::size_t>(std::llround(cfg.t_max / dt));
    solver.advance(steps);
    solver.check_boundary();
    const double err = l2_error(solver.state(), exact_flat_solution(b, sc.spec, solver.time(), cfg.grid));
    errs.push_back(err);
    out.add("dt=" + tag_number(dt) + ".l2_error", err);
  }
  for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
    out.add("ratio_" + tag_number(dts[k]) + "_" + tag_number(dts[k + 1]), errs[k] / errs[k + 1]);
  }
  out.add("finest_l2_error", errs.back());

  // norm over 2000 fused steps
  SolverOptions so;
  so.dt = dts.front();
  so.window_fraction = cfg.window;
  DiracSolver solver(sc.wall, sc.field, sc.spec.epsilon, cfg.grid, so);
  solver.set_state(exact_flat_solution(b, sc.spec, 0.0, cfg.grid));
  const double n0 = solver.state().l2_norm();
  double worst_step = 0.0;
  double prev = n0;
  for (int k = 0; k < 20; ++k) {
    solver.step();
    const double n = solver.state().l2_norm();
    worst_step = std::max(worst_step, std::abs(n - prev) / n0);
    prev = n;
  }
  solver.advance(1980);
  out.add("norm_steps", 2000);
  out.add("norm_drift_relative", std::abs(solver.state().l2_norm() - n0) / n0);
  out.add("norm_drift_per_step_max", worst_step);

  // leading-order constructor against the exact family
  const CoefficientTrack track = build_track(sc.wall, sc.field, sc.spec.y0, cfg.t_max, track_step(cfg.cadence));
  const SpinorGrid asym = assemble_leading_order(sc.spec, track, cfg.t_max, cfg.grid, {cfg.q});
  out.add("assembled_vs_exact_l2", l2_error(asym, exact_flat_solution(b, sc.spec, cfg.t_max, cfg.grid)));
}

void run_circle_dispersion(const SimConfig& cfg, Summary& out) {
  const Scenario sc = make_scenario(cfg);
  const double period = revolution_time(cfg);
  RunSettings rs;
  rs.t_max = cfg.t_max > 0.0 ? cfg.t_max : period;
  rs.dt = cfg.dt;
  rs.q = cfg.q;
  const PacketRun run = run_packet(cfg, sc, rs);
  const std::vector<double> nu = nu_at_samples(run);
  const double nu_max = max_of(nu);
  std::size_t pts = 0, pts_late = 0, pts_asym = 0;
  const double expo = fit_or_nan(nu, run.series.max_amp, 5.0, nu_max, pts);
  const double expo_late = fit_or_nan(nu, run.series.max_amp, 0.5 * nu_max, nu_max, pts_late);
  const double expo_asym = fit_or_nan(nu, run.asym_amp, 0.5 * nu_max, nu_max, pts_asym);

  double bound_ratio = 0.0;
  const double f1 = profile_inverse_l1_norm(sc.spec.profile);
  const double fh1 = profile_l1_norm(sc.spec.profile);
  for (std::size_t k = 0; k < run.series.size(); ++k) {
    const AmplitudeBound b = sup_amplitude_bound(run.track, run.series.t[k], f1, fh1);
    const double scale = std::sqrt(2.0 / sc.spec.epsilon);
    bound_ratio = std::max(bound_ratio, run.asym_amp[k] / (scale * b.value));
  }
  out.add("revolution_time", period);
  out.add("t_max", run.series.t.back());
  out.add("revolutions", run.series.t.back() / period);
  out.add("dt", run.dt);
  out.add("nu_max", nu_max);
  out.add("fit_window_lo", 5.0);
  out.add("fit_points", static_cast<double>(pts));
  out.add("exponent_pde", expo);
  out.add("exponent_pde_upper_half", expo_late);
  out.add("exponent_asymptotic_upper_half", expo_asym);
  out.add("max_asymptotic_over_bound", bound_ratio);
  out.add("amp_ratio_end", run.series.max_amp.back() / run.series.max_amp.front());
  out.add("sup_l2_err_vs_asymptotic", max_of(run.series.l2_err));
}

void run_no_dispersion(const SimConfig& cfg, Summary& out) {
  const Scenario sc = make_scenario(cfg);
  const double period = revolution_time(cfg);
  RunSettings rs;
  rs.t_max = cfg.t_max > 0.0 ? cfg.t_max : period;
  rs.dt = cfg.dt;
  rs.q = cfg.q;
  const PacketRun run = run_packet(cfg, sc, rs);
  double nu_abs = 0.0;
  for (const auto& s : run.track.samples()) nu_abs = std::max(nu_abs, std::abs(s.nu));
  const double a0 = run.series.max_amp.front();
  out.add("revolution_time", period);
  out.add("dt", run.dt);
  out.add("nu_max_abs", nu_abs);
  out.add("amp_drop_max", 1.0 - min_of(run.series.max_amp) / a0);
  out.add("amp_ratio_end", run.series.max_amp.back() / a0);
  out.add("asym_amp_ratio_end", run.asym_amp.back() / run.asym_amp.front());
  out.add("sup_l2_err_vs_asymptotic", max_of(run.series.l2_err));
}

void run_aharonov_bohm(const SimConfig& cfg, Summary& out) {
  const std::vector<double> fluxes = cfg.sweep.empty() ? std::vector<double>{cfg.potential.Phi} : cfg.sweep;
  for (double phi : fluxes) {
    SimConfig c = cfg;
    c.potential.Phi = phi;
    const Scenario sc = make_scenario(c);
    const double period = revolution_time(c);
    RunSettings rs;
    rs.tag = "Phi_" + tag_number(phi);
    rs.t_max = cfg.t_max > 0.0 ? cfg.t_max : period;
    rs.dt = cfg.dt;
    rs.q = cfg.q;
    const PacketRun run = run_packet(c, sc, rs);
    const double winding = last_valid(run.series.phase1) - first_valid(run.series.phase1);
    const std::string k = "Phi=" + tag_number(phi) + ".";
    out.add(k + "revolution_time", period);
    out.add(k + "dt", run.dt);
    out.add(k + "phase_winding", winding);
    out.add(k + "phase_turns", winding / (2.0 * kPi));
    out.add(k + "flux_over_epsilon", phi / c.epsilon);
    out.add(k + "winding_minus_flux_over_epsilon", winding - phi / c.epsilon);
    out.add(k + "action_end", run.track[run.track.size() - 1].action);
  }
}

void run_varying_B_ramp(const SimConfig& cfg, Summary& out) {
  const Scenario sc = make_scenario(cfg);
  RunSettings rs;
  rs.t_max = cfg.t_max;
  rs.dt = cfg.dt;
  rs.q = cfg.q;
  const PacketRun run = run_packet(cfg, sc, rs);
  const CoefficientTrack& tr = run.track;
  std::vector<double> lnc(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) lnc[k] = std::log(tr[k].c);
  const std::vector<double> dlnc = derivative_4th(lnc, tr.dt());
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) worst = std::max(worst, std::abs(tr[k].j * tr[k].gamma - dlnc[k]));
  out.add("identity_max_abs", worst);
  out.add("c_start", tr[0].c);
  out.add("c_end", tr[tr.size() - 1].c);
  out.add("mu_end", tr[tr.size() - 1].mu);
  out.add("dt", run.dt);
  out.add("amp_ratio_end_pde", run.series.max_amp.back() / run.series.max_amp.front());
  out.add("amp_ratio_end_asymptotic", run.asym_amp.back() / run.asym_amp.front());
  out.add("sup_l2_err_vs_asymptotic", max_of(run.series.l2_err));
}

void run_varying_B_transverse(const SimConfig& cfg, Summary& out) {
  const std::vector<double> slopes = cfg.sweep.empty() ? std::vector<double>{cfg.potential.B2} : cfg.sweep;
  for (double b2 : slopes) {
    SimConfig c = cfg;
    c.potential.B2 = b2;
    const Scenario sc = make_scenario(c);
    RunSettings rs;
    rs.tag = "B2_" + tag_number(b2);
    rs.t_max = cfg.t_max;
    rs.dt = cfg.dt;
    rs.q = cfg.q;
    const PacketRun run = run_packet(c, sc, rs);
    const std::vector<double> nu = nu_at_samples(run);
    const double nu_max = max_of(nu);
    std::size_t pts = 0, pts_asym = 0;
    const double expo = fit_or_nan(nu, run.series.max_amp, 0.5 * nu_max, nu_max, pts);
    const double expo_asym = fit_or_nan(nu, run.asym_amp, 0.5 * nu_max, nu_max, pts_asym);
    const std::string k = "B2=" + tag_number(b2) + ".";
    out.add(k + "dt", run.dt);
    out.add(k + "nu_max", nu_max);
    out.add(k + "exponent_pde_upper_half", expo);
    out.add(k + "exponent_asymptotic_upper_half", expo_asym);
    out.add(k + "amp_ratio_end", run.series.max_amp.back() / run.series.max_amp.front());
  }
}

void run_varying_B_periodic(const SimConfig& cfg, Summary& out) {
  const Scenario sc = make_scenario(cfg);
  RunSettings rs;
  rs.t_max = cfg.t_max;
  rs.dt = cfg.dt;
  rs.q = cfg.q;
  const PacketRun run = run_packet(cfg, sc, rs);
  const std::vector<double> nu = nu_at_samples(run);
  const double a0 = run.series.max_amp.front();
  out.add("dt", run.dt);
  out.add("nu_min", min_of(nu));
  out.add("nu_max", max_of(nu));
  out.add("nu_end", nu.back());
  out.add("amp_min_ratio", min_of(run.series.max_amp) / a0);
  out.add("amp_ratio_end", run.series.max_amp.back() / a0);
  out.add("asym_amp_min_ratio", min_of(run.asym_amp) / run.asym_amp.front());
  out.add("asym_amp_ratio_end", run.asym_amp.back() / run.asym_amp.front());
}

void run_epsilon_convergence(const SimConfig& cfg, Summary& out) {
  const std::vector<double> eps = cfg.sweep.empty() ? std::vector<double>{cfg.epsilon} : cfg.sweep;
  const double eps_ref = max_of(eps);
  for (double q : {0.5, 1.0}) {
    std::vector<double> le, lerr;
    for (double e : eps) {
      SimConfig c = cfg;
      c.epsilon = e;
      c.q = q;
      const Scenario sc = make_scenario(c);
      RunSettings rs;
      rs.tag = "q_" + tag_number(q) + "_eps_" + tag_number(e);
      rs.t_max = cfg.t_max;
      // an explicit dt belongs to the largest ε and scales with ε
      rs.dt = cfg.dt > 0.0 ? cfg.cadence / std::ceil(cfg.cadence / (cfg.dt * e / eps_ref) - 1e-9) : 0.0;
      rs.q = q;
      const PacketRun run = run_packet(c, sc, rs);
      const double err = max_of(run.series.l2_err);
      const std::string k = "q=" + tag_number(q) + ".eps=" + tag_number(e) + ".";
      out.add(k + "dt", run.dt);
      out.add(k + "sup_l2_err", err);
      le.push_back(std::log(e));
      lerr.push_back(std::log(err));
    }
    out.add("q=" + tag_number(q) + ".slope", le.size() >= 2 ? least_squares_slope(le, lerr) : kNaN);
  }
}

void run_coefficient_dump(const SimConfig& cfg, Summary& out) {
  const Scenario sc = make_scenario(cfg);
  const double t_max = cfg.t_max > 0.0 ? cfg.t_max : revolution_time(cfg);
  const CoefficientTrack track =
      build_track(sc.wall, sc.field, sc.spec.y0, rounded_up(t_max, cfg.cadence), track_step(cfg.cadence));
  {
    std::ofstream os(fs::path(cfg.out_dir) / "track.csv", std::ios::binary);
    write_track_csv(os, track);
  }
  double route_gap = 0.0;
  for (std::size_t k = 0; k < track.size(); ++k) {
    const DispersionRoutes r = dispersion_rate_routes(track, k);
    route_gap = std::max(route_gap, std::abs(r.from_track - r.from_geometry));
  }
  const TrackSample& last = track[track.size() - 1];
  out.add("t_end", last.t);
  out.add("nu_end", last.nu);
  out.add("lambda_end", last.lambda);
  out.add("mu_end", last.mu);
  out.add("action_end", last.action);
  out.add("dispersion_route_gap_max", route_gap);

  std::vector<double> xi(201);
  for (std::size_t m = 0; m < xi.size(); ++m) xi[m] = -10.0 + 0.1 * static_cast<double>(m);
  double kernel = 0.0;
  for (double t : {0.0, 0.5, 1.0}) {
    if (t > last.t + 1e-12) continue;
    kernel = std::max(kernel, kernel_residual(sc.spec.profile, track.at(t), xi, 128, 12.0));
  }
  out.add("kernel_residual_max", kernel);
  if (last.t >= 1.0) out.add("transport_residual_t1", transport_residual(sc.spec, track, 1.0, xi));

  if (const auto* g = std::get_if<GaussianProfile>(&sc.spec.profile)) {
    std::vector<double> z(81);
    for (std::size_t m = 0; m < z.size(); ++m) z[m] = -8.0 + 0.2 * static_cast<double>(m);
    double worst = 0.0;
    for (double t : {0.0, 0.5, 1.0}) {
      if (t > last.t + 1e-12) continue;
      const EnvelopeField f = envelope_numeric(sc.spec, track, t, z, z);
      const double peak = f.max_abs();
      for (std::size_t j = 0; j < z.size(); ++j) {
        for (std::size_t i = 0; i < z.size(); ++i) {
          const cplx exact = gaussian_envelope_scalar(g->sigma, track.at(t), {z[i], z[j]});
          worst = std::max(worst, std::abs(f(i, j) - exact) / peak);
        }
      }
    }
    out.add("closed_form_vs_quadrature_rel_linf", worst);
  }
}

using Runner = void (*)(const SimConfig&, Summary&);

Runner runner_for(const std::string& name) {
  static const std::map<std::string, Runner> table{
      {"flat_slowdown", run_flat_slowdown},
      {"flat_exact_oracle", run_flat_exact_oracle},
      {"circle_dispersion", run_circle_dispersion},
      {"no_dispersion", run_no_dispersion},
      {"aharonov_bohm", run_aharonov_bohm},
      {"varying_B_ramp", run_varying_B_ramp},
      {"varying_B_transverse", run_varying_B_transverse},
      {"varying_B_periodic", run_varying_B_periodic},
      {"epsilon_convergence", run_epsilon_convergence},
      {"coefficient_dump", run_coefficient_dump},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second;
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> list = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& r : registry()) v.push_back(r.info);
    return v;
  }();
  return list;
}

bool is_experiment(const std::string& name) {
  for (const auto& r : registry()) {
    if (r.info.name == name) return true;
  }
  return false;
}

void apply_experiment_defaults(SimConfig& cfg) { lookup(cfg.experiment).defaults(cfg); }

void Summary::add(const std::string& key, double value) { entries_.emplace_back(key, fmt(value)); }

void Summary::add_text(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }

bool Summary::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

double Summary::number(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return std::strtod(v.c_str(), nullptr);
  }
  throw std::out_of_range("summary has no key '" + key + "'");
}

std::string Summary::text() const {
  std::string s;
  for (const auto& [k, v] : entries_) s += k + " = " + v + "\n";
  return s;
}

SampledProfile load_profile_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open profile file '" + path + "'");
  std::vector<double> xs;
  std::vector<cplx> vs;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, re, im;
    if (!(ls >> x >> re >> im)) {
      throw ConfigError(path + ": line " + std::to_string(line_no) + ": expected xi,re,im");
    }
    xs.push_back(x);
    vs.emplace_back(re, im);
  }
  if (xs.size() < 4) throw ConfigError(path + ": need at least 4 samples");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (std::abs(xs[k] - xs[k - 1] - h) > 1e-9 * std::abs(h)) throw ConfigError(path + ": xi grid is not uniform");
  }
  return SampledProfile{xs.front(), h, std::move(vs)};
}

WavepacketSpec make_wavepacket(const SimConfig& cfg) {
  WavepacketSpec spec;
  spec.epsilon = cfg.epsilon;
  spec.y0 = cfg.y0;
  if (cfg.profile_file.empty()) {
    spec.profile = GaussianProfile{cfg.sigma};
  } else {
    spec.profile = load_profile_csv(cfg.profile_file);
  }
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

double revolution_time(const SimConfig& cfg) {
  PotentialParams pp = cfg.potential;
  pp.tilt = cfg.wall.tilt;
  const DomainWall wall = make_wall(cfg.wall);
  const MagneticPotential field = make_potential(pp);
  Vec2 y = project_to_interface(wall, cfg.y0);
  const double dt = 1e-3;
  const double chunk = 5.0;
  double t = 0.0;
  double turned = 0.0;
  for (int round = 0; round < 200; ++round) {
    const Trajectory tr = integrate_center(wall, field, y, chunk, dt);
    for (std::size_t k = 1; k < tr.points.size(); ++k) {
      const double step = tr.points[k].theta - tr.points[k - 1].theta;
      if (std::abs(turned + step) >= 2.0 * kPi) {
        const double frac = (2.0 * kPi - std::abs(turned)) / std::abs(step);
        return t + tr.points[k - 1].t + frac * dt;
      }
      turned += step;
    }
    t += tr.points.back().t;
    y = tr.points.back().y;
  }
  throw ConfigError("revolution_time: the frame does not complete a turn (open interface?)");
}

Summary run_experiment(const SimConfig& cfg) {
  validate_config(cfg);
  fs::create_directories(cfg.out_dir);
  Summary out;
  out.add_text("experiment", cfg.experiment);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  out.add_text("config_hash", hash);
  out.add("epsilon", cfg.epsilon);
  out.add("sigma", cfg.sigma);
  out.add_text("profile", cfg.profile_file.empty() ? "gaussian" : cfg.profile_file);
  out.add("q", cfg.q);
  out.add_text("simd", kernels::isa_name(kernels::active_isa()));
  write_text(fs::path(cfg.out_dir) / "config.resolved", resolved_text(cfg, false));
  try {
    runner_for(cfg.experiment)(cfg, out);
  } catch (const Error&) {
    rethrow_with_context(cfg.experiment + ": ");
  }
  write_text(fs::path(cfg.out_dir) / "summary.txt", out.text());
  return out;
}

}  // namespace dirac_edge
