#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hstw/errors.hpp"
#include "hstw/pde1d.hpp"

using namespace hstw;

namespace {

double mass(const SimState& s, const Grid1D& g) {
  return std::accumulate(s.n.begin(), s.n.end(), 0.0) * g.dx();
}

SimState bump(const Grid1D& g, double gamma) {
  SimState s(g.n_nodes());
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    const double x = g.node(i);
    s.n[i] = std::max(0.0, 1.05 - x * x);
  }
  refresh_pressure(s, gamma);
  return s;
}

}  // namespace

TEST_CASE("grid nodes") {
  const Grid1D g(-1.0, 1.0, 4);
  CHECK(g.n_nodes() == 5);
  CHECK(g.dx() == 0.5);
  CHECK(g.node(0) == -1.0);
  CHECK(g.node(4) == 1.0);
  CHECK(g.nodes().size() == 5);
}

TEST_CASE("transport conserves mass with zero-flux boundaries") {
  const Grid1D g(-2.0, 2.0, 200);
  SimState s = bump(g, 5.0);
  TransportOptions opts;
  opts.boundary = TransportBoundary::ZeroFlux;
  const double m0 = mass(s, g);
  for (int k = 0; k < 50; ++k) {
    const double before = mass(s, g);
    const double dt = stable_transport_dt(s.n, 5.0, g.dx(), 0.4);
    step_transport(s, g, 5.0, dt, opts);
    refresh_pressure(s, 5.0);
    CHECK(std::abs(mass(s, g) - before) <= 1e-12 * before);
  }
  CHECK(std::abs(mass(s, g) - m0) <= 1e-11 * m0);
}

TEST_CASE("uniform and empty states are fixed by transport") {
  const Grid1D g(0.0, 1.0, 50);
  SimState s(g.n_nodes());
  std::fill(s.n.begin(), s.n.end(), 0.7);
  refresh_pressure(s, 3.0);
  TransportOptions opts;
  opts.boundary = TransportBoundary::ZeroFlux;
  step_transport(s, g, 3.0, 1e-4, opts);
  for (double v : s.n) CHECK(v == doctest::Approx(0.7).epsilon(1e-14));

  SimState e(g.n_nodes());
  step_transport(e, g, 3.0, 1e-4);
  for (double v : e.n) CHECK(v == 0.0);
}

TEST_CASE("explicit step above the stable limit") {
  const Grid1D g(-2.0, 2.0, 200);
  SimState s = bump(g, 5.0);
  const double dt = 10.0 * stable_transport_dt(s.n, 5.0, g.dx(), 0.4);
  TransportOptions strict;
  strict.substep = false;
  try {
    step_transport(s, g, 5.0, dt, strict);
    FAIL("expected CFLViolation");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::CFLViolation);
  }
  CHECK_NOTHROW(step_transport(s, g, 5.0, dt));
  for (double v : s.n) CHECK(v >= 0.0);
}

TEST_CASE("reaction step is exact exponential growth") {
  SimState s(3);
  s.n = {0.5, 0.5, 0.0};
  s.c = {0.1, 0.9, 0.9};
  step_reaction(s, GrowthLaw::step(21.0, 30.0, 0.6), 0.01);
  CHECK(s.n[0] == doctest::Approx(0.5 * std::exp(-0.3)).epsilon(1e-15));
  CHECK(s.n[1] == doctest::Approx(0.5 * std::exp(0.21)).epsilon(1e-15));
  CHECK(s.n[2] == 0.0);
}

TEST_CASE("nutrient solve special cases") {
  const Grid1D g(-5.0, 5.0, 100);
  WaveParameters vitro = reference_parameters();
  SimState s(g.n_nodes());
  auto c = solve_nutrient(s, g, vitro);
  for (double v : c) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  WaveParameters vivo = reference_parameters(NutrientModel::InVivo);
  c = solve_nutrient(s, g, vivo);
  for (double v : c) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  std::fill(s.n.begin(), s.n.end(), 1.0);
  std::fill(s.H.begin(), s.H.end(), 1);
  c = solve_nutrient(s, g, vitro);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double exact =
        std::cosh(std::sqrt(2.0) * g.node(i)) / std::cosh(std::sqrt(2.0) * 5.0);
    CHECK(c[i] == doctest::Approx(exact).epsilon(5e-3));
    CHECK(c[i] >= 0.0);
    CHECK(c[i] <= 1.0);
  }
}

TEST_CASE("front mask latches") {
  SimState s(4);
  s.n = {0.0, 1e-3, 1e-6, 0.0};
  update_front(s);
  CHECK(s.H[1] == 1);
  CHECK(s.H[2] == 0);
  s.n[1] = 0.0;
  update_front(s);
  CHECK(s.H[1] == 1);
}

TEST_CASE("front position and speed fit") {
  const Grid1D g(0.0, 1.0, 10);
  SimState s(g.n_nodes());
  CHECK(std::isnan(front_position(s, g)));
  s.n[3] = 0.5;
  s.n[6] = 1e-4;
  CHECK(front_position(s, g) == doctest::Approx(0.6));

  FrontTrace trace;
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.1 * i;
    trace.samples.push_back({t, 3.0 * t + 1.0});
  }
  CHECK(estimate_wave_speed(trace, 0.5, 1.5) == doctest::Approx(3.0));
  CHECK(trace.fit_residual < 1e-12);
  CHECK(trace.fit_t_start == doctest::Approx(0.5));
  try {
    estimate_wave_speed(trace, 0.5, 0.65);
    FAIL("expected InsufficientSamples");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::InsufficientSamples);
  }
}

TEST_CASE("short simulation runs") {
  SimConfig cfg;
  cfg.grid = Grid1D(-5.0, 5.0, 200);
  cfg.params = reference_parameters();
  cfg.t_end = 0.05;
  cfg.output_times = {0.0, 0.05};
  const SimResult r = run_simulation(cfg);
  REQUIRE(r.snapshots.size() == 2);
  CHECK(r.snapshots[0].t == 0.0);
  CHECK(r.snapshots[1].t == doctest::Approx(0.05));
  CHECK(r.c_min_seen >= 0.0);
  CHECK(r.c_max_seen <= 1.0 + 1e-12);
  CHECK_FALSE(r.trace.samples.empty());

  cfg.t_end = 0.0;
  cfg.output_times = {0.0};
  const SimResult z = run_simulation(cfg);
  CHECK(z.snapshots.size() == 1);
  CHECK(z.steps == 0);
}

TEST_CASE("zero initial data stays zero") {
  SimConfig cfg;
  cfg.grid = Grid1D(-2.0, 2.0, 40);
  cfg.params = reference_parameters();
  cfg.t_end = 0.02;
  cfg.initial_value = 0.0;
  cfg.output_times = {0.02};
  const SimResult r = run_simulation(cfg);
  REQUIRE(r.snapshots.size() == 1);
  for (double v : r.snapshots[0].n) CHECK(v == 0.0);
  for (double v : r.snapshots[0].c) CHECK(v == doctest::Approx(1.0));
  CHECK(r.trace.samples.empty());
}
