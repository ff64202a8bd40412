#include "hstw/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>

#include "hstw/analytic_waves.hpp"
#include "hstw/errors.hpp"
#include "hstw/general_waves.hpp"
#include "hstw/io.hpp"
#include "hstw/pde1d.hpp"

namespace hstw {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw SolverError(ErrorKind::InvalidParams,
                      "cannot create output directory '" + dir + "'");
  }
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw SolverError(ErrorKind::InvalidParams,
                      "cannot write '" + path.string() + "'");
  }
  out << std::setw(2) << doc << '\n';
}

json parameters_json(const WaveParameters& p) {
  json out = {{"model", std::string(to_string(p.model))},
              {"c_B", p.c_B},
              {"gamma", p.gamma},
              {"c_bar", p.growth.threshold()},
              {"growth_step", p.growth.is_step()},
              {"consumption_step", p.consumption.analytic_only()}};
  if (p.growth.is_step()) {
    out["g_plus"] = p.growth.g_plus();
    out["g_minus"] = p.growth.g_minus();
  }
  if (p.consumption.analytic_only()) {
    out["lambda"] = p.consumption.lambda();
    out["n_c"] = p.consumption.n_c();
  }
  return out;
}

json tolerances_json(const RunConfig& cfg, SolverKind kind) {
  if (kind == SolverKind::Analytic) {
    return {{"root_tol", kAnalyticRootTol},
            {"profile_samples", cfg.profile_samples}};
  }
  return solver_settings_json(cfg.general);
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

SimConfig sim_config_for(const RunConfig& cfg) {
  SimConfig sim = cfg.sim;
  sim.params = cfg.params;
  std::vector<double> times;
  for (double t : sim.output_times) {
    if (t >= 0.0 && t <= sim.t_end) times.push_back(t);
  }
  sim.output_times = times;
  return sim;
}

void say(const CommandContext& ctx, const std::string& line) {
  if (!ctx.quiet && ctx.out) *ctx.out << line << '\n';
}

json wave_document(const RunConfig& cfg, const TravelingWave& wave) {
  json doc = wave_summary_json(wave);
  doc["parameters"] = parameters_json(cfg.params);
  doc["tolerances"] = tolerances_json(cfg, wave.solver);
  return doc;
}

void write_wave(const fs::path& dir, const RunConfig& cfg,
                const TravelingWave& wave) {
  write_json(dir / "wave_summary.json", wave_document(cfg, wave));
  write_csv((dir / "wave_profile.csv").string(), profile_table(wave.profile));
}

std::string wave_line(const TravelingWave& w) {
  std::ostringstream s;
  s << std::setprecision(12) << "sigma=" << w.sigma << " R=" << w.R
    << " x1=" << w.x1;
  return s.str();
}

}  // namespace

int exit_code_for(const SolverError& err) {
  switch (err.kind()) {
    case ErrorKind::InvalidParams:
    case ErrorKind::NoWave:
    case ErrorKind::StepPsiUnsupported:
      return kExitNoWave;
    default:
      return kExitNumerical;
  }
}

TravelingWave compute_wave(const RunConfig& cfg) {
  cfg.params.validate();
  SolverChoice choice = cfg.solver;
  if (choice == SolverChoice::Auto) {
    choice = cfg.params.both_step() ? SolverChoice::Analytic
                                    : SolverChoice::General;
  }
  if (choice == SolverChoice::Analytic) {
    if (!cfg.params.both_step()) {
      throw SolverError(ErrorKind::InvalidParams,
                        "analytic solver needs step growth and consumption");
    }
    return solve_analytic(cfg.params, cfg.profile_samples);
  }
  GeneralSolverOptions opts = cfg.general;
  opts.profile_samples = cfg.profile_samples;
  return solve_sigma(cfg.params, opts);
}

int cmd_wave(const RunConfig& cfg, const CommandContext& ctx) {
  const TravelingWave wave = compute_wave(cfg);
  ensure_dir(ctx.out_dir);
  write_wave(ctx.out_dir, cfg, wave);
  say(ctx, wave_line(wave));
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const CommandContext& ctx) {
  cfg.params.validate();
  const SimConfig sim = sim_config_for(cfg);
  ensure_dir(ctx.out_dir);
  SimResult result = run_simulation(sim);
  if (result.snapshots.empty()) result.snapshots.push_back(initial_state(sim));

  const fs::path dir = ctx.out_dir;
  json snaps = json::array();
  for (const SimState& s : result.snapshots) {
    const std::string name = "snapshot_t" + time_tag(s.t) + ".csv";
    write_csv((dir / name).string(), snapshot_table(s, sim.grid));
    snaps.push_back({{"t", s.t}, {"file", name}});
  }
  write_csv((dir / "front_trace.csv").string(), trace_table(result.trace));

  json fit = nullptr;
  try {
    const double t0 = std::min(cfg.validation.fit_start, sim.t_end);
    const double t1 = std::min(cfg.validation.fit_end, sim.t_end);
    const double speed = estimate_wave_speed(result.trace, t0, t1);
    fit = {{"speed", speed},
           {"t_start", result.trace.fit_t_start},
           {"t_end", result.trace.fit_t_end},
           {"residual", result.trace.fit_residual}};
  } catch (const SolverError& e) {
    if (e.kind() != ErrorKind::InsufficientSamples) throw;
  }

  json doc = {{"parameters", parameters_json(cfg.params)},
              {"grid",
               {{"x_min", sim.grid.x_min},
                {"x_max", sim.grid.x_max},
                {"n_cells", sim.grid.n_cells}}},
              {"t_end", sim.t_end},
              {"epsilon", sim.epsilon},
              {"cfl", sim.transport.cfl},
              {"dt_max", sim.dt_max},
              {"steps", result.steps},
              {"c_min_seen", result.c_min_seen},
              {"c_max_seen", result.c_max_seen},
              {"snapshots", snaps},
              {"fitted_speed", fit.is_null() ? json() : fit["speed"]},
              {"fit", fit}};
  write_json(dir / "sim_summary.json", doc);

  std::ostringstream line;
  line << "snapshots=" << snaps.size() << " steps=" << result.steps;
  if (!fit.is_null()) {
    line << std::setprecision(10) << " speed=" << fit["speed"].get<double>();
  }
  say(ctx, line.str());
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, const CommandContext& ctx) {
  cfg.params.validate();
  if (!cfg.params.both_step()) {
    throw SolverError(ErrorKind::InvalidParams,
                      "validate needs step growth and consumption");
  }
  ensure_dir(ctx.out_dir);
  const TravelingWave wave = solve_analytic(cfg.params, cfg.profile_samples);

  SimConfig sim = sim_config_for(cfg);
  sim.output_times = {sim.t_end};
  SimResult result = run_simulation(sim);
  const double sigma_num = estimate_wave_speed(
      result.trace, cfg.validation.fit_start, cfg.validation.fit_end);
  const double gap = sigma_num / wave.sigma - 1.0;
  const bool pass =
      gap >= cfg.validation.lower && gap <= cfg.validation.upper;

  json structure = nullptr;
  if (!result.snapshots.empty()) {
    const WaveStructure ws =
        analyze_structure(result.snapshots.back(), sim.grid, 0.02, 1e-3,
                          sim.epsilon);
    const double g = cfg.params.gamma;
    const bool plateau_ok =
        ws.found && ws.plateau >= 1.0 - 5.0 / g && ws.plateau <= 1.0 + 5.0 / g;
    const bool dp_ok =
        ws.found && std::abs(ws.dp_inner_edge) <= 0.1 * wave.sigma;
    structure = {{"found", ws.found},
                 {"plateau", ws.plateau},
                 {"plateau_ok", plateau_ok},
                 {"tail_monotone", ws.tail_monotone},
                 {"inner_edge_x", sim.grid.node(ws.inner_edge)},
                 {"front_x", sim.grid.node(ws.front)},
                 {"dp_inner_edge", ws.dp_inner_edge},
                 {"dp_inner_edge_ok", dp_ok}};
  }

  json doc = {{"parameters", parameters_json(cfg.params)},
              {"sigma_analytic", wave.sigma},
              {"R", wave.R},
              {"sigma_numeric", sigma_num},
              {"relative_gap", gap},
              {"band", {cfg.validation.lower, cfg.validation.upper}},
              {"fit_window",
               {result.trace.fit_t_start, result.trace.fit_t_end}},
              {"fit_residual", result.trace.fit_residual},
              {"pass", pass},
              {"structure", structure},
              {"c_min_seen", result.c_min_seen},
              {"c_max_seen", result.c_max_seen},
              {"steps", result.steps}};

  const double c_bar = cfg.params.growth.threshold();
  if (c_bar < 0.5 * cfg.params.c_B) {
    const ModelComparison cmp = compare_models(cfg.params);
    doc["ordering"] = {{"sigma_vitro", cmp.vitro.sigma},
                       {"sigma_vivo", cmp.vivo.sigma},
                       {"R_vitro", cmp.vitro.R},
                       {"R_vivo", cmp.vivo.R},
                       {"vivo_le_vitro", cmp.ordering_ok}};
  } else {
    doc["ordering"] = nullptr;
  }

  const fs::path dir = ctx.out_dir;
  write_json(dir / "validation_report.json", doc);
  write_csv((dir / "front_trace.csv").string(), trace_table(result.trace));

  std::ostringstream line;
  line << std::setprecision(10) << "sigma_analytic=" << wave.sigma
       << " sigma_numeric=" << sigma_num << " gap=" << gap
       << (pass ? " PASS" : " FAIL");
  say(ctx, line.str());
  return pass ? kExitOk : kExitValidation;
}

int cmd_sweep(const RunConfig& cfg, const CommandContext& ctx) {
  std::vector<std::optional<double>> cbs, cbars;
  for (double v : cfg.sweep.c_B) cbs.emplace_back(v);
  for (double v : cfg.sweep.c_bar) cbars.emplace_back(v);
  if (cbs.empty()) cbs.emplace_back(std::nullopt);
  if (cbars.empty()) cbars.emplace_back(std::nullopt);
  if (cfg.sweep.c_B.empty() && cfg.sweep.c_bar.empty()) {
    throw SolverError(ErrorKind::InvalidParams,
                      "sweep needs a nonempty c_B or c_bar list");
  }
  ensure_dir(ctx.out_dir);

  struct Outcome {
    int code = kExitOk;
    std::string error;
    TravelingWave wave;
  };
  struct Point {
    std::string name;
    RunConfig cfg;
    std::future<Outcome> result;
  };
  std::vector<Point> points;
  for (const auto& cb : cbs) {
    for (const auto& cbar : cbars) {
      Point pt;
      pt.name = "point_" + std::to_string(points.size());
      pt.cfg = cfg.at_point(cb, cbar);
      points.push_back(std::move(pt));
    }
  }
  for (Point& pt : points) {
    const fs::path dir = fs::path(ctx.out_dir) / pt.name;
    const RunConfig* pc = &pt.cfg;
    pt.result = std::async(std::launch::async, [dir, pc]() {
      Outcome o;
      try {
        o.wave = compute_wave(*pc);
        ensure_dir(dir.string());
        write_wave(dir, *pc, o.wave);
      } catch (const SolverError& e) {
        o.code = exit_code_for(e);
        o.error = e.what();
      } catch (const std::exception& e) {
        o.code = kExitNumerical;
        o.error = e.what();
      }
      return o;
    });
  }

  int worst = kExitOk;
  json index = json::array();
  for (Point& pt : points) {
    const Outcome o = pt.result.get();
    worst = std::max(worst, o.code);
    json entry = {{"dir", pt.name},
                  {"c_B", pt.cfg.params.c_B},
                  {"c_bar", pt.cfg.params.growth.threshold()},
                  {"exit_code", o.code}};
    if (o.code == kExitOk) {
      entry["sigma"] = o.wave.sigma;
      entry["R"] = num_or_null(o.wave.R);
      std::ostringstream line;
      line << pt.name << " c_B=" << pt.cfg.params.c_B
           << " c_bar=" << pt.cfg.params.growth.threshold() << ' '
           << wave_line(o.wave);
      say(ctx, line.str());
    } else {
      entry["error"] = o.error;
      if (ctx.err) *ctx.err << pt.name << ": " << o.error << '\n';
    }
    index.push_back(entry);
  }
  write_json(fs::path(ctx.out_dir) / "sweep_index.json",
             {{"model", std::string(to_string(cfg.params.model))},
              {"points", index}});
  return worst;
}

int run_guarded(const std::function<int()>& body, const CommandContext& ctx) {
  try {
    return body();
  } catch (const SolverError& e) {
    if (ctx.err) *ctx.err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    if (ctx.err) *ctx.err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace hstw
