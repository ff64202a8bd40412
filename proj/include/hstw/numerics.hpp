#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hstw/model_core.hpp"

namespace hstw {

using ScalarFn = std::function<double(double)>;

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;

  bool valid() const { return lo < hi && f_lo * f_hi <= 0.0; }
};

Bracket make_bracket(const ScalarFn& f, double lo, double hi);

// Bisection. Stops once |f(mid)| <= tol_f or the bracket is narrower than
// tol_x. Throws NoSignChange on an invalid bracket and MaxIterExceeded.
double bisect(const ScalarFn& f, Bracket bracket, double tol_x, double tol_f,
              int max_iter = 200);

// Grows `hi` geometrically until f changes sign on [lo, hi]. Throws
// NoSignChange once hi would exceed `cap`.
Bracket grow_bracket(const ScalarFn& f, double lo, double hi, double cap,
                     double factor = 2.0);

enum class QuadWeight { One, S };

inline constexpr int kDefaultPanels = 64;

// Composite 4-point Gauss-Legendre on [a, b]; panels are split at every
// point of `splits` that falls strictly inside the interval.
double gauss_integrate(const ScalarFn& f, double a, double b,
                       int n_panels = kDefaultPanels,
                       std::span<const double> splits = {});

// Integral over [0,1] of f(s) (weight One) or s*f(s) (weight S).
double quad01(const ScalarFn& f, QuadWeight weight,
              int n_panels = kDefaultPanels,
              std::span<const double> splits = {});

// Thomas elimination. lower[i] couples x[i-1] into row i (lower[0] is
// ignored), upper[i] couples x[i+1] (upper[n-1] is ignored).
std::vector<double> tridiag_solve(std::span<const double> lower,
                                  std::span<const double> diag,
                                  std::span<const double> upper,
                                  std::span<const double> rhs);

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.
template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
using OdeRhs = std::function<OdeState<N>(double, const OdeState<N>&)>;

struct OdeOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  double max_step = 0.25;
  long max_steps = 2'000'000;
};

// Integrates from t0 to t1 (either direction). `observer(t, y)` is called
// after every accepted step; returning false stops the integration at that
// step. Returns the final (t, y). Throws StepSizeUnderflow.
template <std::size_t N>
std::pair<double, OdeState<N>> integrate_ode(
    const OdeRhs<N>& rhs, double t0, OdeState<N> y0, double t1,
    const OdeOptions& opts,
    const std::function<bool(double, const OdeState<N>&)>& observer = {});

// Cauchy problem for the necrotic-tail nutrient in the variable
// y = -exp(g_minus*x/sigma) on [-1, -delta], with c~(-1) = 1 and
// u~(-1) = slope0. TypeI: u~ reaches zero before the cutoff. TypeII: u~ stays
// positive up to y = -delta.
struct ShootingOutcome {
  enum class Type { TypeI, TypeII };
  Type type = Type::TypeI;
  double y_cross = 0.0;     // TypeI only
  double u_terminal = 0.0;  // u~ at the last integrated point
  double c_terminal = 0.0;  // c~ at the last integrated point

  bool type_two() const { return type == Type::TypeII; }
};

inline constexpr double kDefaultShootingCutoff = 1e-8;

ShootingOutcome integrate_shooting(double sigma, double g_minus,
                                   const ConsumptionLaw& psi, double slope0,
                                   double delta = kDefaultShootingCutoff);

}  // namespace hstw
