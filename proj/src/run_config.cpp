#include "hstw/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "hstw/errors.hpp"

namespace hstw {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) {
    throw SolverError(ErrorKind::InvalidParams, where + ": expected an object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw SolverError(ErrorKind::InvalidParams,
                        where + ": unknown key '" + key + "'");
    }
  }
}

double num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) {
    throw SolverError(ErrorKind::InvalidParams,
                      std::string("'") + key + "' must be a number");
  }
  return obj.at(key).get<double>();
}

double positive(const json& obj, const char* key, double fallback) {
  const double v = num(obj, key, fallback);
  if (!(v > 0.0)) {
    throw SolverError(ErrorKind::InvalidParams,
                      std::string("'") + key + "' must be positive");
  }
  return v;
}

std::vector<double> positive_list(const json& obj, const char* key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  const json& arr = obj.at(key);
  if (!arr.is_array() || arr.empty()) {
    throw SolverError(ErrorKind::InvalidParams,
                      std::string("'") + key + "' must be a nonempty list");
  }
  for (const auto& v : arr) {
    if (!v.is_number() || !(v.get<double>() > 0.0)) {
      throw SolverError(ErrorKind::InvalidParams,
                        std::string("'") + key + "' entries must be positive");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

SolverChoice parse_solver(const std::string& name) {
  if (name == "auto") return SolverChoice::Auto;
  if (name == "analytic") return SolverChoice::Analytic;
  if (name == "general") return SolverChoice::General;
  throw SolverError(ErrorKind::InvalidParams, "unknown solver '" + name + "'");
}

GrowthLaw parse_growth(const json& b) {
  const std::string type = b.value("type", "step");
  if (type == "step") {
    reject_unknown(b, {"type", "g_plus", "g_minus", "c_bar"}, "growth");
    return GrowthLaw::step(positive(b, "g_plus", 21.0),
                           positive(b, "g_minus", 30.0),
                           positive(b, "c_bar", 0.6));
  }
  if (type == "mollified_step") {
    reject_unknown(b, {"type", "g_plus", "g_minus", "c_bar", "width"},
                   "growth");
    return GrowthLaw::mollified_step(
        positive(b, "g_plus", 21.0), positive(b, "g_minus", 30.0),
        positive(b, "c_bar", 0.6), positive(b, "width", 1e-3));
  }
  if (type == "linear") {
    // G(c) = slope (c - c_bar)
    reject_unknown(b, {"type", "slope", "c_bar"}, "growth");
    const double slope = positive(b, "slope", 200.0);
    const double c_bar = positive(b, "c_bar", 0.3);
    return GrowthLaw::smooth([=](double c) { return slope * (c - c_bar); },
                             c_bar);
  }
  throw SolverError(ErrorKind::InvalidParams,
                    "growth: unknown type '" + type + "'");
}

ConsumptionLaw parse_consumption(const json& b) {
  const std::string type = b.value("type", "step");
  if (type == "step") {
    reject_unknown(b, {"type", "lambda", "n_c"}, "consumption");
    return ConsumptionLaw::step(positive(b, "lambda", 2.0),
                                positive(b, "n_c", 0.5));
  }
  if (type == "mollified_step") {
    reject_unknown(b, {"type", "lambda", "n_c", "width", "zero_width"},
                   "consumption");
    return ConsumptionLaw::mollified_step(
        positive(b, "lambda", 2.0), positive(b, "n_c", 0.5),
        positive(b, "width", 1e-3), positive(b, "zero_width", 1e-20));
  }
  if (type == "linear") {
    // psi(n) = psi1 * min(n, 1)
    reject_unknown(b, {"type", "psi1"}, "consumption");
    const double psi1 = positive(b, "psi1", 2.0);
    return ConsumptionLaw::smooth(
        [=](double n) { return psi1 * std::clamp(n, 0.0, 1.0); });
  }
  throw SolverError(ErrorKind::InvalidParams,
                    "consumption: unknown type '" + type + "'");
}

SimConfig RunConfig::default_sim_config() {
  SimConfig s;
  s.grid = Grid1D(-20.0, 20.0, 2000);
  s.params = reference_parameters();
  s.t_end = 1.5;
  s.output_times = {1.0, 1.5};
  return s;
}

RunConfig RunConfig::at_point(std::optional<double> c_B,
                             std::optional<double> c_bar) const {
  RunConfig out = *this;
  if (c_B) out.params.c_B = *c_B;
  if (c_bar) {
    out.growth_block["c_bar"] = *c_bar;
    out.params.growth = parse_growth(out.growth_block);
  }
  out.sim.params = out.params;
  return out;
}

void RunConfig::set_model(NutrientModel model) {
  params.model = model;
  if (!growth_explicit) params.growth = reference_parameters(model).growth;
  sim.params.model = model;
}

namespace {

RunConfig parse_impl(const json& doc) {
  reject_unknown(doc,
                 {"model", "solver", "parameters", "wave", "simulation",
                  "validation", "sweep", "output"},
                 "config");
  RunConfig cfg;
  if (doc.contains("model")) {
    cfg.set_model(parse_model(doc.at("model").get<std::string>()));
  }
  if (doc.contains("solver")) {
    cfg.solver = parse_solver(doc.at("solver").get<std::string>());
  }
  if (doc.contains("parameters")) {
    const json& p = doc.at("parameters");
    reject_unknown(p, {"c_B", "gamma", "growth", "consumption"}, "parameters");
    cfg.params.c_B = positive(p, "c_B", cfg.params.c_B);
    cfg.params.gamma = num(p, "gamma", cfg.params.gamma);
    if (cfg.params.gamma < 1.0) {
      throw SolverError(ErrorKind::InvalidParams, "'gamma' must be >= 1");
    }
    if (p.contains("growth")) {
      cfg.growth_block = p.at("growth");
      cfg.growth_explicit = true;
      cfg.params.growth = parse_growth(cfg.growth_block);
    }
    if (p.contains("consumption")) {
      cfg.params.consumption = parse_consumption(p.at("consumption"));
    }
  }
  if (doc.contains("wave")) {
    const json& w = doc.at("wave");
    reject_unknown(w, {"samples", "delta", "scan_intervals"}, "wave");
    cfg.profile_samples =
        static_cast<std::size_t>(positive(w, "samples", 4096));
    cfg.general.profile_samples = cfg.profile_samples;
    cfg.general.delta = positive(w, "delta", cfg.general.delta);
    cfg.general.scan_intervals =
        static_cast<int>(positive(w, "scan_intervals", 32));
  }
  if (doc.contains("simulation")) {
    const json& s = doc.at("simulation");
    reject_unknown(s,
                   {"x_min", "x_max", "n_cells", "t_end", "output_times",
                    "trace_interval", "epsilon", "cfl", "dt_max",
                    "initial_value", "initial_half_width"},
                   "simulation");
    SimConfig& sim = cfg.sim;
    sim.grid = Grid1D(num(s, "x_min", sim.grid.x_min),
                      num(s, "x_max", sim.grid.x_max),
                      static_cast<std::size_t>(
                          positive(s, "n_cells", sim.grid.n_cells)));
    sim.t_end = num(s, "t_end", sim.t_end);
    if (sim.t_end < 0.0) {
      throw SolverError(ErrorKind::InvalidParams, "'t_end' must be >= 0");
    }
    if (s.contains("output_times")) {
      sim.output_times.clear();
      for (const auto& v : s.at("output_times")) {
        sim.output_times.push_back(v.get<double>());
      }
    }
    sim.trace_interval = positive(s, "trace_interval", sim.trace_interval);
    sim.epsilon = positive(s, "epsilon", sim.epsilon);
    sim.transport.cfl = positive(s, "cfl", sim.transport.cfl);
    sim.dt_max = positive(s, "dt_max", sim.dt_max);
    sim.initial_value = positive(s, "initial_value", sim.initial_value);
    sim.initial_half_width =
        positive(s, "initial_half_width", sim.initial_half_width);
  }
  if (doc.contains("validation")) {
    const json& v = doc.at("validation");
    reject_unknown(v, {"fit_start", "fit_end", "lower", "upper"},
                   "validation");
    cfg.validation.fit_start = num(v, "fit_start", cfg.validation.fit_start);
    cfg.validation.fit_end = num(v, "fit_end", cfg.validation.fit_end);
    cfg.validation.lower = num(v, "lower", cfg.validation.lower);
    cfg.validation.upper = num(v, "upper", cfg.validation.upper);
  }
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    reject_unknown(s, {"c_B", "c_bar"}, "sweep");
    cfg.sweep.c_B = positive_list(s, "c_B");
    cfg.sweep.c_bar = positive_list(s, "c_bar");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, {"dir"}, "output");
    cfg.out_dir = o.value("dir", cfg.out_dir);
  }
  cfg.sim.params = cfg.params;
  return cfg;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  try {
    return parse_impl(doc);
  } catch (const json::exception& e) {
    throw SolverError(ErrorKind::InvalidParams,
                      std::string("config: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SolverError(ErrorKind::InvalidParams,
                      "cannot open config '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw SolverError(ErrorKind::InvalidParams,
                      "config '" + path + "': " + e.what());
  }
  return parse_run_config(doc);
}

}  // namespace hstw
