#include "hstw/pde1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hstw/errors.hpp"
#include "hstw/numerics.hpp"

namespace hstw {

Grid1D::Grid1D(double lo, double hi, std::size_t cells)
    : x_min(lo), x_max(hi), n_cells(cells) {
  if (!(hi > lo) || cells < 2) {
    throw SolverError(ErrorKind::InvalidParams,
                      "Grid1D: need x_max > x_min and at least 2 cells");
  }
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(n_nodes());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(i);
  return x;
}

double stable_transport_dt(const std::vector<double>& n, double gamma,
                           double dx, double cfl) {
  double n_max = 0.0;
  for (double v : n) n_max = std::max(n_max, v);
  const double diffusivity = gamma * pressure(n_max, gamma);
  if (diffusivity <= 0.0) return std::numeric_limits<double>::infinity();
  return cfl * dx * dx / diffusivity;
}

void refresh_pressure(SimState& state, double gamma) {
  for (std::size_t i = 0; i < state.n.size(); ++i) {
    state.p[i] = pressure(state.n[i], gamma);
  }
}

namespace {

void transport_substep(SimState& s, double dx, double dt,
                       TransportBoundary boundary, std::vector<double>& flux) {
  const std::size_t m = s.n.size();
  // flux[i] is n d/dx p through the face between nodes i and i+1.
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double mobility = 0.5 * (s.n[i] + s.n[i + 1]);
    flux[i] = mobility * (s.p[i + 1] - s.p[i]) / dx;
  }
  const double r = dt / dx;
  if (boundary == TransportBoundary::Dirichlet) {
    for (std::size_t i = 1; i + 1 < m; ++i) {
      s.n[i] += r * (flux[i] - flux[i - 1]);
    }
    s.n.front() = 0.0;
    s.n.back() = 0.0;
  } else {
    // Boundary nodes own half cells with a closed outer face.
    const double first = 2.0 * r * flux[0];
    const double last = -2.0 * r * flux[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i) {
      s.n[i] += r * (flux[i] - flux[i - 1]);
    }
    s.n.front() += first;
    s.n.back() += last;
  }
}

}  // namespace

void step_transport(SimState& state, const Grid1D& grid, double gamma,
                    double dt, const TransportOptions& opts) {
  if (dt <= 0.0) return;
  const double dx = grid.dx();
  std::vector<double> flux(state.n.size());
  refresh_pressure(state, gamma);
  double remaining = dt;
  while (remaining > 0.0) {
    const double stable = stable_transport_dt(state.n, gamma, dx, opts.cfl);
    double h = remaining;
    if (h > stable * (1.0 + 1e-12)) {
      if (!opts.substep) {
        std::ostringstream msg;
        msg << "step_transport: dt=" << dt << " exceeds stable step " << stable;
        throw SolverError(ErrorKind::CFLViolation, msg.str());
      }
      h = stable;
    }
    transport_substep(state, dx, h, opts.boundary, flux);
    refresh_pressure(state, gamma);
    remaining -= h;
    if (remaining < 1e-15 * dt) break;
  }
}

void step_reaction(SimState& state, const GrowthLaw& growth, double dt) {
  for (std::size_t i = 0; i < state.n.size(); ++i) {
    if (state.n[i] != 0.0) state.n[i] *= std::exp(growth(state.c[i]) * dt);
  }
}

std::vector<double> solve_nutrient(const SimState& state, const Grid1D& grid,
                                   const WaveParameters& params) {
  const std::size_t m = state.n.size();
  const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
  const double c_B = params.c_B;
  std::vector<double> lower(m, 0.0), diag(m, 1.0), upper(m, 0.0), rhs(m, c_B);
  const bool vitro = params.model == NutrientModel::InVitro;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double psi = params.consumption(state.n[i]);
    if (vitro) {
      if (!state.H[i]) continue;  // pinned to c_B
      lower[i] = -inv_dx2;
      upper[i] = -inv_dx2;
      diag[i] = 2.0 * inv_dx2 + psi;
      rhs[i] = 0.0;
    } else {
      const double supply = state.H[i] ? 0.0 : 1.0;
      lower[i] = -inv_dx2;
      upper[i] = -inv_dx2;
      diag[i] = 2.0 * inv_dx2 + psi + supply;
      rhs[i] = supply * c_B;
    }
  }
  return tridiag_solve(lower, diag, upper, rhs);
}

void update_front(SimState& state, double epsilon) {
  for (std::size_t i = 0; i < state.n.size(); ++i) {
    if (state.n[i] > epsilon) state.H[i] = 1;
  }
}

double front_position(const SimState& state, const Grid1D& grid,
                      double epsilon) {
  for (std::size_t i = state.n.size(); i-- > 0;) {
    if (state.n[i] > epsilon) return grid.node(i);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

SimState initial_state(const SimConfig& config) {
  const Grid1D& g = config.grid;
  SimState s(g.n_nodes());
  for (std::size_t i = 1; i + 1 < s.n.size(); ++i) {
    if (std::abs(g.node(i)) < config.initial_half_width) {
      s.n[i] = config.initial_value;
    }
  }
  update_front(s, config.epsilon);
  refresh_pressure(s, config.params.gamma);
  s.c = solve_nutrient(s, g, config.params);
  return s;
}

SimResult run_simulation(const SimConfig& config) {
  config.params.validate();
  if (config.t_end < 0.0 || config.trace_interval <= 0.0 ||
      config.dt_max <= 0.0) {
    throw SolverError(ErrorKind::InvalidParams,
                      "run_simulation: need t_end >= 0, positive intervals");
  }
  const Grid1D& g = config.grid;
  const double gamma = config.params.gamma;
  SimResult out;
  SimState s = initial_state(config);
  out.c_min_seen = *std::min_element(s.c.begin(), s.c.end());
  out.c_max_seen = *std::max_element(s.c.begin(), s.c.end());

  std::vector<double> outputs;
  for (double t : config.output_times) {
    if (t >= 0.0 && t <= config.t_end) outputs.push_back(t);
  }
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  std::size_t next_out = 0;

  const auto record_trace = [&](const SimState& st) {
    const double xf = front_position(st, g, config.epsilon);
    if (!std::isnan(xf)) out.trace.samples.push_back({st.t, xf});
  };
  while (next_out < outputs.size() && outputs[next_out] <= 0.0) {
    out.snapshots.push_back(s);
    ++next_out;
  }
  record_trace(s);
  double next_trace = config.trace_interval;

  constexpr double kTimeEps = 1e-12;
  while (s.t < config.t_end - kTimeEps) {
    double dt = std::min(config.dt_max, config.t_end - s.t);
    dt = std::min(dt, stable_transport_dt(s.n, gamma, g.dx(),
                                          config.transport.cfl));
    if (next_out < outputs.size()) dt = std::min(dt, outputs[next_out] - s.t);
    dt = std::min(dt, next_trace - s.t);
    dt = std::max(dt, 1e-14);

    s.c = solve_nutrient(s, g, config.params);
    const auto [lo, hi] = std::minmax_element(s.c.begin(), s.c.end());
    out.c_min_seen = std::min(out.c_min_seen, *lo);
    out.c_max_seen = std::max(out.c_max_seen, *hi);

    step_transport(s, g, gamma, dt, config.transport);
    step_reaction(s, config.params.growth, dt);
    update_front(s, config.epsilon);
    refresh_pressure(s, gamma);
    s.t += dt;
    ++out.steps;

    if (s.t >= next_trace - kTimeEps) {
      record_trace(s);
      next_trace += config.trace_interval;
    }
    if (next_out < outputs.size() && s.t >= outputs[next_out] - kTimeEps) {
      s.c = solve_nutrient(s, g, config.params);
    }
    while (next_out < outputs.size() && s.t >= outputs[next_out] - kTimeEps) {
      out.snapshots.push_back(s);
      ++next_out;
    }
  }
  return out;
}

double estimate_wave_speed(FrontTrace& trace, double t_start, double t_end) {
  double st = 0, sx = 0, stt = 0, stx = 0;
  std::size_t count = 0;
  for (const auto& smp : trace.samples) {
    if (smp.t < t_start - 1e-12 || smp.t > t_end + 1e-12) continue;
    st += smp.t;
    sx += smp.x_front;
    stt += smp.t * smp.t;
    stx += smp.t * smp.x_front;
    ++count;
  }
  if (count < 4) {
    throw SolverError(ErrorKind::InsufficientSamples,
                      "estimate_wave_speed: fewer than 4 samples in window");
  }
  const double k = static_cast<double>(count);
  const double denom = k * stt - st * st;
  const double slope = (k * stx - st * sx) / denom;
  const double intercept = (sx - slope * st) / k;
  double ss = 0.0;
  for (const auto& smp : trace.samples) {
    if (smp.t < t_start - 1e-12 || smp.t > t_end + 1e-12) continue;
    const double r = smp.x_front - (slope * smp.t + intercept);
    ss += r * r;
  }
  trace.fitted_speed = slope;
  trace.fit_t_start = t_start;
  trace.fit_t_end = t_end;
  trace.fit_residual = std::sqrt(ss / k);
  return slope;
}

WaveStructure analyze_structure(const SimState& state, const Grid1D& grid,
                                double band, double pressure_floor,
                                double epsilon) {
  WaveStructure ws;
  const std::size_t m = state.n.size();
  if (m < 3) return ws;
  std::size_t centre = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(grid.node(i)) < std::abs(grid.node(centre))) centre = i;
  }
  std::size_t front = m;
  for (std::size_t i = m; i-- > centre;) {
    if (state.n[i] > epsilon) {
      front = i;
      break;
    }
  }
  if (front == m) return ws;
  ws.front = front;
  ws.peak = centre;
  for (std::size_t i = centre; i <= front; ++i) {
    if (state.n[i] > state.n[ws.peak]) ws.peak = i;
  }
  ws.plateau = state.n[ws.peak];

  const double n_floor = (1.0 - band) * ws.plateau;
  ws.band_lo = ws.peak;
  while (ws.band_lo > centre && state.n[ws.band_lo - 1] >= n_floor) --ws.band_lo;
  ws.band_hi = ws.peak;
  while (ws.band_hi < front && state.n[ws.band_hi + 1] >= n_floor) ++ws.band_hi;

  const double p_floor = pressure_floor * state.p[ws.peak];
  std::size_t edge = ws.peak;
  while (edge > centre && state.p[edge - 1] >= p_floor) --edge;
  ws.inner_edge = edge;

  ws.tail_monotone = true;
  for (std::size_t i = centre; i < edge; ++i) {
    if (state.n[i + 1] < state.n[i] * (1.0 - 1e-12)) {
      ws.tail_monotone = false;
      break;
    }
  }
  if (edge > 0 && edge + 1 < m) {
    ws.dp_inner_edge =
        (state.p[edge + 1] - state.p[edge - 1]) / (2.0 * grid.dx());
  }
  ws.found = true;
  return ws;
}

}  // namespace hstw
