#include "hstw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hstw/errors.hpp"

namespace hstw {

Bracket make_bracket(const ScalarFn& f, double lo, double hi) {
  return Bracket{lo, hi, f(lo), f(hi)};
}

double bisect(const ScalarFn& f, Bracket b, double tol_x, double tol_f,
              int max_iter) {
  if (!(b.lo < b.hi) || b.f_lo * b.f_hi > 0.0 || std::isnan(b.f_lo) ||
      std::isnan(b.f_hi)) {
    std::ostringstream msg;
    msg << "bisect: no sign change on [" << b.lo << ", " << b.hi
        << "] (f = " << b.f_lo << ", " << b.f_hi << ")";
    throw SolverError(ErrorKind::NoSignChange, msg.str());
  }
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol_f || (b.hi - b.lo) <= tol_x || mid <= b.lo ||
        mid >= b.hi) {
      return mid;
    }
    if ((fm < 0.0) == (b.f_lo < 0.0)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  throw SolverError(ErrorKind::MaxIterExceeded,
                    "bisect: iteration limit reached");
}

Bracket grow_bracket(const ScalarFn& f, double lo, double hi, double cap,
                     double factor) {
  Bracket b = make_bracket(f, lo, hi);
  while (b.f_lo * b.f_hi > 0.0) {
    if (b.hi >= cap) {
      std::ostringstream msg;
      msg << "no sign change on [" << lo << ", " << cap << "]";
      throw SolverError(ErrorKind::NoSignChange, msg.str());
    }
    b.hi = std::min(cap, b.hi * factor);
    b.f_hi = f(b.hi);
  }
  return b;
}

namespace {

// 4-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kNodes = {
    -0.861136311594052575224, -0.339981043584856264803,
    0.339981043584856264803, 0.861136311594052575224};
constexpr std::array<double, 4> kWeights = {
    0.347854845137453857373, 0.652145154862546142627,
    0.652145154862546142627, 0.347854845137453857373};

double gauss_panels(const ScalarFn& f, double a, double b, int n_panels) {
  const double h = (b - a) / n_panels;
  double total = 0.0;
  for (int p = 0; p < n_panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      acc += kWeights[k] * f(mid + 0.5 * h * kNodes[k]);
    }
    total += 0.5 * h * acc;
  }
  return total;
}

}  // namespace

double gauss_integrate(const ScalarFn& f, double a, double b, int n_panels,
                       std::span<const double> splits) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double s : splits) {
    if (s > a && s < b) cuts.push_back(s);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Keep the panel density roughly uniform over [a, b].
    const double frac = (cuts[i + 1] - cuts[i]) / (b - a);
    const int panels = std::max(2, static_cast<int>(std::ceil(frac * n_panels)));
    total += gauss_panels(f, cuts[i], cuts[i + 1], panels);
  }
  return total;
}

double quad01(const ScalarFn& f, QuadWeight weight, int n_panels,
              std::span<const double> splits) {
  if (weight == QuadWeight::One) {
    return gauss_integrate(f, 0.0, 1.0, n_panels, splits);
  }
  return gauss_integrate([&f](double s) { return s * f(s); }, 0.0, 1.0,
                         n_panels, splits);
}

std::vector<double> tridiag_solve(std::span<const double> lower,
                                  std::span<const double> diag,
                                  std::span<const double> upper,
                                  std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw SolverError(ErrorKind::InvalidParams,
                      "tridiag_solve: inconsistent sizes");
  }
  std::vector<double> c_prime(n), x(n);
  if (n == 0) return x;
  double pivot = diag[0];
  if (std::abs(pivot) < 1e-14) {
    throw SolverError(ErrorKind::SingularPivot, "tridiag_solve: pivot 0");
  }
  c_prime[0] = upper[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c_prime[i - 1];
    if (std::abs(pivot) < 1e-14) {
      std::ostringstream msg;
      msg << "tridiag_solve: singular pivot at row " << i;
      throw SolverError(ErrorKind::SingularPivot, msg.str());
    }
    c_prime[i] = (i + 1 < n) ? upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= c_prime[i] * x[i + 1];
  }
  return x;
}

template <std::size_t N>
std::pair<double, OdeState<N>> integrate_ode(
    const OdeRhs<N>& rhs, double t0, OdeState<N> y, double t1,
    const OdeOptions& opts,
    const std::function<bool(double, const OdeState<N>&)>& observer) {
  // Dormand-Prince 5(4) tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  double t = t0;
  double h = std::min(opts.initial_step, std::abs(t1 - t0));
  if (h <= 0.0) return {t, y};

  auto combo = [](const OdeState<N>& base, double hh,
                  std::initializer_list<std::pair<double, const OdeState<N>*>>
                      terms) {
    OdeState<N> out = base;
    for (const auto& [coef, k] : terms) {
      for (std::size_t i = 0; i < N; ++i) out[i] += hh * coef * (*k)[i];
    }
    return out;
  };

  OdeState<N> k1 = rhs(t, y);
  long steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (++steps > opts.max_steps) {
      throw SolverError(ErrorKind::StepSizeUnderflow,
                        "integrate_ode: step budget exhausted");
    }
    h = std::min(h, std::abs(t1 - t));
    const double hs = dir * h;
    const OdeState<N> k2 = rhs(t + c2 * hs, combo(y, hs, {{a21, &k1}}));
    const OdeState<N> k3 =
        rhs(t + c3 * hs, combo(y, hs, {{a31, &k1}, {a32, &k2}}));
    const OdeState<N> k4 =
        rhs(t + c4 * hs, combo(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const OdeState<N> k5 = rhs(
        t + c5 * hs,
        combo(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const OdeState<N> k6 =
        rhs(t + hs, combo(y, hs,
                          {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4},
                           {a65, &k5}}));
    const OdeState<N> y_new = combo(
        y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const OdeState<N> k7 = rhs(t + hs, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opts.abs_tol +
          opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      t += hs;
      y = y_new;
      k1 = k7;
      if (observer && !observer(t, y)) return {t, y};
      const double grow =
          (err == 0.0) ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h = std::min(opts.max_step, h * grow);
    } else {
      h *= std::max(0.1, 0.9 * std::pow(err, -0.25));
      if (h < opts.min_step) {
        throw SolverError(ErrorKind::StepSizeUnderflow,
                          "integrate_ode: step size underflow");
      }
    }
  }
  return {t, y};
}

template std::pair<double, OdeState<2>> integrate_ode<2>(
    const OdeRhs<2>&, double, OdeState<2>, double, const OdeOptions&,
    const std::function<bool(double, const OdeState<2>&)>&);
template std::pair<double, OdeState<3>> integrate_ode<3>(
    const OdeRhs<3>&, double, OdeState<3>, double, const OdeOptions&,
    const std::function<bool(double, const OdeState<3>&)>&);

ShootingOutcome integrate_shooting(double sigma, double g_minus,
                                   const ConsumptionLaw& psi, double slope0,
                                   double delta) {
  if (!(sigma > 0.0) || !(g_minus > 0.0) || !(delta > 0.0 && delta < 1.0) ||
      slope0 < 0.0) {
    throw SolverError(ErrorKind::InvalidParams,
                      "integrate_shooting: need sigma>0, g_minus>0, "
                      "slope0>=0, delta in (0,1)");
  }
  if (psi.analytic_only()) {
    throw SolverError(ErrorKind::StepPsiUnsupported,
                      "integrate_shooting: step consumption law is not C^1");
  }

  ShootingOutcome out;
  if (slope0 == 0.0) {
    // u~ is nonincreasing, so it leaves zero downwards immediately.
    out.type = ShootingOutcome::Type::TypeI;
    out.y_cross = -1.0;
    out.u_terminal = 0.0;
    out.c_terminal = 1.0;
    return out;
  }

  // Logarithmic stretching t = ln(-y) removes the 1/y coefficient:
  //   dc~/dt = (sigma/g-) u~,  du~/dt = (sigma/g-) psi(e^t) c~,
  // integrated from t = 0 down to t = ln(delta).
  const double k = sigma / g_minus;
  const OdeRhs<2> rhs = [&](double t, const OdeState<2>& s) {
    return OdeState<2>{k * s[1], k * psi(std::exp(t)) * s[0]};
  };

  double t_prev = 0.0;
  double u_prev = slope0;
  bool crossed = false;
  double t_cross = 0.0;
  const std::function<bool(double, const OdeState<2>&)> observer =
      [&](double t, const OdeState<2>& s) {
        if (s[1] <= 0.0) {
          crossed = true;
          const double w = u_prev / (u_prev - s[1]);
          t_cross = t_prev + w * (t - t_prev);
          return false;
        }
        t_prev = t;
        u_prev = s[1];
        return true;
      };

  OdeOptions opts;
  opts.max_step = 0.5;
  const auto [t_end, state] =
      integrate_ode<2>(rhs, 0.0, {1.0, slope0}, std::log(delta), opts, observer);
  (void)t_end;
  out.c_terminal = state[0];
  out.u_terminal = state[1];
  if (crossed) {
    out.type = ShootingOutcome::Type::TypeI;
    out.y_cross = -std::exp(t_cross);
  } else {
    out.type = ShootingOutcome::Type::TypeII;
  }
  return out;
}

}  // namespace hstw
