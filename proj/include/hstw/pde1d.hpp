#pragma once

#include <cstddef>
#include <vector>

#include "hstw/model_core.hpp"

namespace hstw {

// Uniform node grid x_i = x_min + i*dx, i = 0..n_cells.
struct Grid1D {
  double x_min = -20.0;
  double x_max = 20.0;
  std::size_t n_cells = 2000;

  Grid1D() = default;
  Grid1D(double lo, double hi, std::size_t cells);

  double dx() const { return (x_max - x_min) / static_cast<double>(n_cells); }
  std::size_t n_nodes() const { return n_cells + 1; }
  double node(std::size_t i) const {
    return x_min + static_cast<double>(i) * dx();
  }
  std::vector<double> nodes() const;
};

struct SimState {
  double t = 0.0;
  std::vector<double> n;
  std::vector<double> c;
  std::vector<double> p;
  std::vector<unsigned char> H;

  explicit SimState(std::size_t nodes = 0)
      : n(nodes, 0.0), c(nodes, 0.0), p(nodes, 0.0), H(nodes, 0) {}
};

struct FrontSample {
  double t;
  double x_front;
};

struct FrontTrace {
  std::vector<FrontSample> samples;
  double fitted_speed = 0.0;
  double fit_t_start = 0.0;
  double fit_t_end = 0.0;
  double fit_residual = 0.0;
};

enum class TransportBoundary { Dirichlet, ZeroFlux };

struct TransportOptions {
  double cfl = 0.4;
  TransportBoundary boundary = TransportBoundary::Dirichlet;
  // With substepping off, a dt above the stable step raises CFLViolation.
  bool substep = true;
};

// dt <= cfl * dx^2 / max(gamma * n^gamma).
double stable_transport_dt(const std::vector<double>& n, double gamma,
                           double dx, double cfl);

// Explicit conservative step of dn/dt = d/dx(n d/dx n^gamma).
void step_transport(SimState& state, const Grid1D& grid, double gamma,
                    double dt, const TransportOptions& opts = {});

// n <- n exp(G(c) dt).
void step_reaction(SimState& state, const GrowthLaw& growth, double dt);

// Tridiagonal solve for c with Dirichlet c = c_B at both ends.
//  vitro: nodes with H = 1 solve -c'' + psi(n) c = 0, nodes with H = 0 are
//         pinned to c_B;
//  vivo:  -c'' + psi(n) c = (1 - H)(c_B - c) everywhere.
std::vector<double> solve_nutrient(const SimState& state, const Grid1D& grid,
                                   const WaveParameters& params);

inline constexpr double kFrontTolerance = 1e-5;

// Latches H = 1 wherever n > epsilon.
void update_front(SimState& state, double epsilon = kFrontTolerance);

void refresh_pressure(SimState& state, double gamma);

// Rightmost node with n > epsilon; NaN when there is none.
double front_position(const SimState& state, const Grid1D& grid,
                      double epsilon = kFrontTolerance);

struct SimConfig {
  Grid1D grid;
  WaveParameters params;
  double t_end = 1.5;
  std::vector<double> output_times;
  double trace_interval = 0.01;
  double epsilon = kFrontTolerance;
  double dt_max = 1e-3;
  TransportOptions transport;
  // Initial plateau n = value on (-half_width, half_width).
  double initial_value = 0.1;
  double initial_half_width = 0.5;
};

struct SimResult {
  std::vector<SimState> snapshots;
  FrontTrace trace;
  std::size_t steps = 0;
  // Extremes of the nutrient over every solve of the run.
  double c_min_seen = 0.0;
  double c_max_seen = 0.0;
};

SimState initial_state(const SimConfig& config);

SimResult run_simulation(const SimConfig& config);

// Least-squares slope of x_front against t over [t_start, t_end]. Fills the
// fit fields of `trace`. Throws InsufficientSamples for fewer than 4 points.
double estimate_wave_speed(FrontTrace& trace, double t_start, double t_end);

// Shape of the right-moving wave in a snapshot. The inner edge of the
// plateau is the transition to the necrotic tail, i.e. the left end of the
// pressure support {p >= pressure_floor * p_max} around the peak.
struct WaveStructure {
  bool found = false;
  double plateau = 0.0;        // max n on the right half
  std::size_t peak = 0;        // node index of the plateau maximum
  std::size_t band_lo = 0;     // leftmost node with n >= (1 - band) plateau
  std::size_t band_hi = 0;     // rightmost node with n >= (1 - band) plateau
  std::size_t inner_edge = 0;  // left end of the pressure support
  std::size_t front = 0;       // rightmost node with n > epsilon
  bool tail_monotone = false;  // n nondecreasing from the centre to the edge
  double dp_inner_edge = 0.0;  // centred p' at the inner edge
};

WaveStructure analyze_structure(const SimState& state, const Grid1D& grid,
                                double band = 0.02,
                                double pressure_floor = 1e-3,
                                double epsilon = kFrontTolerance);

}  // namespace hstw
