#include "hstw/general_waves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hstw/analytic_waves.hpp"
#include "hstw/errors.hpp"

namespace hstw {

double effective_cutoff(const ConsumptionLaw& psi, double delta) {
  const double floor = 1e-10 * psi.at_full();
  while (delta > 1e-280 && psi(delta) > floor) delta *= 1e-2;
  return delta;
}

ShootResult shoot_A(double sigma, const WaveParameters& params,
                    const GeneralSolverOptions& opts) {
  const ConsumptionLaw& psi = params.consumption;
  if (psi.analytic_only()) {
    throw SolverError(ErrorKind::StepPsiUnsupported,
                      "shoot_A: step consumption law; use A = sqrt(lambda n_c)");
  }
  if (!(sigma > 0.0)) {
    throw SolverError(ErrorKind::InvalidParams, "shoot_A: sigma must be > 0");
  }
  const double g_minus = params.growth.tail_rate();
  ShootResult out;
  out.sigma = sigma;
  out.bound_sqrt_psi1 = std::sqrt(psi.at_full());
  out.bound_integral = sigma / g_minus * psi.tail_integral();
  out.cutoff = effective_cutoff(psi, opts.delta);

  const auto shoot = [&](double slope) {
    return integrate_shooting(sigma, g_minus, psi, slope, out.cutoff);
  };

  double lo = 0.0;
  double hi = std::min(out.bound_sqrt_psi1, out.bound_integral) * 1.05 + 1e-12;
  ShootingOutcome top = shoot(hi);
  if (!top.type_two()) {
    std::ostringstream msg;
    msg << "shoot_A: upper slope " << hi << " is TypeI at sigma=" << sigma;
    throw SolverError(ErrorKind::BracketFailure, msg.str());
  }
  while (hi - lo > opts.slope_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const ShootingOutcome o = shoot(mid);
    if (o.type_two()) {
      hi = mid;
      top = o;
    } else {
      lo = mid;
    }
  }
  out.A = 0.5 * (lo + hi);
  out.residual = top.u_terminal;
  return out;
}

GammaProfile::GammaProfile(NutrientModel model, double c_B, double psi1,
                           double A, double R)
    : model_(model), c_B_(c_B), q_(std::sqrt(psi1)), A_(A), R_(R) {}

double GammaProfile::operator()(double s) const {
  const double a = q_ * R_;
  if (model_ == NutrientModel::InVitro) {
    const double e1 = std::exp(-a * s);
    const double e2 = std::exp(-a * (2.0 - s));
    const double ee = std::exp(-2.0 * a);
    return c_B_ * (A_ * (e1 - e2) + q_ * (e1 + e2)) /
           (A_ * (1.0 - ee) + q_ * (1.0 + ee));
  }
  return 0.5 * c_B_ *
         (std::exp(-a * s) + (q_ - A_) / (q_ + A_) * std::exp(a * (s - 2.0)));
}

double GammaProfile::c_R_prime() const {
  const double ee = std::exp(-2.0 * q_ * R_);
  if (model_ == NutrientModel::InVitro) {
    return c_B_ * (A_ * (1.0 + ee) + q_ * (1.0 - ee)) /
           (A_ * (1.0 - ee) + q_ * (1.0 + ee));
  }
  return 0.5 * c_B_ * (1.0 + (A_ - q_) / (A_ + q_) * ee);
}

namespace {

// s-positions in (0,1) where the decreasing profile crosses a kink of G.
std::vector<double> kink_positions(const std::function<double(double)>& profile,
                                   const GrowthLaw& growth) {
  std::vector<double> out;
  const double top = profile(0.0);
  const double bottom = profile(1.0);
  for (double ck : growth.kinks()) {
    if (!(ck < top && ck > bottom)) continue;
    const auto f = [&](double s) { return profile(s) - ck; };
    out.push_back(bisect(f, Bracket{0.0, 1.0, top - ck, bottom - ck}, 1e-15,
                         0.0, 200));
  }
  return out;
}

double moment(const std::function<double(double)>& profile,
              const GrowthLaw& growth, QuadWeight weight, int n_panels) {
  const auto splits = kink_positions(profile, growth);
  return quad01([&](double s) { return growth(profile(s)); }, weight, n_panels,
                splits);
}

}  // namespace

double moment_sG(const GammaProfile& gamma, const GrowthLaw& growth,
                 int n_panels) {
  return moment(std::cref(gamma), growth, QuadWeight::S, n_panels);
}

double moment_G(const GammaProfile& gamma, const GrowthLaw& growth,
                int n_panels) {
  return moment(std::cref(gamma), growth, QuadWeight::One, n_panels);
}

namespace {

double solve_decreasing_moment(const std::function<double(double)>& f,
                               double cap, double tol, const char* what) {
  const double f0 = f(0.0);
  if (!(f0 > 0.0)) {
    std::ostringstream msg;
    msg << what << ": moment at R=0 is " << f0 << " (need > 0)";
    throw SolverError(ErrorKind::NoSignChange, msg.str());
  }
  Bracket b{0.0, 1.0, f0, f(1.0)};
  while (b.f_hi > 0.0) {
    if (b.hi >= cap) {
      std::ostringstream msg;
      msg << what << ": no sign change up to R=" << cap;
      throw SolverError(ErrorKind::NoSignChange, msg.str());
    }
    b.lo = b.hi;
    b.f_lo = b.f_hi;
    b.hi *= 2.0;
    b.f_hi = f(b.hi);
  }
  return bisect(f, b, tol, 0.0, 400);
}

}  // namespace

double solve_R_sigma(double sigma, double A, const WaveParameters& params,
                     const GeneralSolverOptions& opts) {
  params.validate();
  (void)sigma;
  if (!(A > 0.0)) {
    throw SolverError(ErrorKind::InvalidParams, "solve_R_sigma: need A > 0");
  }
  const double psi1 = params.consumption.at_full();
  const auto f = [&](double R) {
    return moment_sG(GammaProfile(params.model, params.c_B, psi1, A, R),
                     params.growth, opts.n_panels);
  };
  return solve_decreasing_moment(f, 1e3 / std::sqrt(psi1), opts.R_tol,
                                 "solve_R_sigma");
}

double compute_R_b(const WaveParameters& params,
                   const GeneralSolverOptions& opts) {
  params.validate();
  const double q = std::sqrt(params.consumption.at_full());
  const double c_B = params.c_B;
  const bool vitro = params.model == NutrientModel::InVitro;
  const auto f = [&](double R) {
    const auto envelope = [&](double s) {
      const double e = std::exp(-q * R * s);
      return vitro ? c_B / std::cosh(q * R * s) : 0.5 * c_B * e * (1.0 + e);
    };
    return moment(envelope, params.growth, QuadWeight::S, opts.n_panels);
  };
  return solve_decreasing_moment(f, 1e3 / q, opts.R_tol, "compute_R_b");
}

namespace {

struct SigmaPoint {
  double gap;
  double A;
  double R;
  double shoot_residual;
};

SigmaPoint evaluate_sigma(double sigma, const WaveParameters& params,
                          const GeneralSolverOptions& opts) {
  const ShootResult shot = shoot_A(sigma, params, opts);
  const double R = solve_R_sigma(sigma, shot.A, params, opts);
  const GammaProfile gamma(params.model, params.c_B,
                           params.consumption.at_full(), shot.A, R);
  const double rhs = R * moment_G(gamma, params.growth, opts.n_panels);
  return SigmaPoint{sigma - rhs, shot.A, R, shot.residual};
}

}  // namespace

double fixed_point_gap(double sigma, const WaveParameters& params,
                       const GeneralSolverOptions& opts) {
  return evaluate_sigma(sigma, params, opts).gap;
}

namespace {

TravelingWave assemble_wave(const WaveParameters& params,
                            const GeneralSolverOptions& opts, double sigma,
                            const SigmaPoint& pt, double R_b) {
  const double R = pt.R;
  const double A = pt.A;
  const double psi1 = params.consumption.at_full();
  const double q = std::sqrt(psi1);
  const GammaProfile gamma(params.model, params.c_B, psi1, A, R);
  const GrowthLaw& G = params.growth;
  const ConsumptionLaw& psi = params.consumption;

  TravelingWave w;
  w.model = params.model;
  w.solver = SolverKind::General;
  w.sigma = sigma;
  w.R = R;
  w.A = A;
  w.R_b = R_b;
  w.c_R_prime = gamma.c_R_prime();
  w.c0 = gamma.c0();
  w.c0_prime = A * w.c0;
  w.fixed_point_residual = pt.gap;
  w.shooting_residual = pt.shoot_residual;
  w.root_residual = moment_sG(gamma, G, opts.n_panels);

  const auto rim_c = [&](double x) { return gamma((R - x) / R); };
  const double c_bar = G.threshold();
  if (gamma(1.0) < c_bar && c_bar < gamma(0.0)) {
    const double s1 = bisect([&](double s) { return gamma(s) - c_bar; },
                             Bracket{0.0, 1.0, gamma(0.0) - c_bar,
                                     gamma(1.0) - c_bar},
                             1e-15, 0.0, 200);
    w.x1 = R * (1.0 - s1);
  }
  w.alpha = (R - w.x1) / R;

  // Kinks of G mapped onto the rim, for the pressure quadrature.
  std::vector<double> x_kinks;
  for (double s : kink_positions(std::cref(gamma), G)) {
    x_kinks.push_back(R * (1.0 - s));
  }

  const auto grid = default_profile_grid(R, w.x1, opts.profile_samples);
  WaveProfile& prof = w.profile;
  const std::size_t n = grid.size();
  prof.x = grid;
  prof.n.assign(n, 0.0);
  prof.c.assign(n, 0.0);
  prof.p.assign(n, 0.0);

  // Necrotic tail: integrate (c, c', ln n) backwards from x = 0.
  const OdeRhs<3> tail_rhs = [&](double, const OdeState<3>& s) {
    return OdeState<3>{s[1], psi(std::exp(s[2])) * s[0], -G(s[0]) / sigma};
  };
  OdeOptions ode;
  ode.max_step = 0.05;
  ode.rel_tol = 1e-12;
  ode.abs_tol = 1e-15;
  std::size_t first_rim = 0;
  while (first_rim < n && grid[first_rim] < 0.0) ++first_rim;
  OdeState<3> state{w.c0, w.c0_prime, 0.0};
  double x_prev = 0.0;
  for (std::size_t i = first_rim; i-- > 0;) {
    state = integrate_ode<3>(tail_rhs, x_prev, state, grid[i], ode).second;
    x_prev = grid[i];
    prof.c[i] = state[0];
    prof.n[i] = std::exp(state[2]);
  }

  for (std::size_t i = first_rim; i < n; ++i) {
    const double x = grid[i];
    if (x <= R) {
      prof.n[i] = 1.0;
      prof.c[i] = rim_c(x);
      if (x > 0.0 && x < R) {
        prof.p[i] = -gauss_integrate(
            [&](double z) { return (x - z) * G(rim_c(z)); }, 0.0, x, 32,
            x_kinks);
      }
    } else {
      prof.c[i] = params.model == NutrientModel::InVitro
                      ? params.c_B
                      : params.c_B - w.c_R_prime * std::exp(q * (R - x));
    }
  }
  return w;
}

}  // namespace

TravelingWave solve_sigma(const WaveParameters& params,
                          const GeneralSolverOptions& opts) {
  params.validate();
  if (params.consumption.analytic_only()) {
    throw SolverError(ErrorKind::StepPsiUnsupported,
                      "solve_sigma: step consumption law; use the analytic "
                      "solver");
  }
  const double R_b = compute_R_b(params, opts);
  const double G_cB = params.growth(params.c_B);
  const double cap = 2.0 * R_b * G_cB + 2.0;

  const auto gap = [&](double s) { return evaluate_sigma(s, params, opts).gap; };

  const double sigma_lo = opts.sigma_lo;
  const double gap_lo = gap(sigma_lo);
  if (!(gap_lo < 0.0)) {
    throw SolverError(ErrorKind::NoWave,
                      "solve_sigma: fixed-point map not above sigma near 0");
  }
  double sigma_hi = 1.0;
  double gap_hi = gap(sigma_hi);
  while (gap_hi <= 0.0) {
    if (sigma_hi > cap) {
      throw SolverError(ErrorKind::NoWave,
                        "solve_sigma: no sign change below the uniform bound");
    }
    sigma_hi *= 2.0;
    gap_hi = gap(sigma_hi);
  }

  // Scan for every sign change; existence is guaranteed, uniqueness is not.
  const int m = std::max(1, opts.scan_intervals);
  std::vector<Bracket> brackets;
  double prev_s = sigma_lo;
  double prev_g = gap_lo;
  for (int i = 1; i <= m; ++i) {
    const double s = (i == m) ? sigma_hi
                              : sigma_lo + (sigma_hi - sigma_lo) * i / m;
    const double g = (i == m) ? gap_hi : gap(s);
    if (prev_g * g <= 0.0) brackets.push_back(Bracket{prev_s, s, prev_g, g});
    prev_s = s;
    prev_g = g;
  }
  if (brackets.empty()) {
    throw SolverError(ErrorKind::NoWave, "solve_sigma: scan found no root");
  }

  std::vector<double> roots;
  for (const Bracket& b : brackets) {
    const double tol_f = opts.fixed_point_rel_tol * std::max(1.0, b.lo);
    roots.push_back(bisect(gap, b, 1e-13 * std::max(1.0, b.hi), tol_f, 200));
  }
  const double sigma = roots.front();
  const SigmaPoint pt = evaluate_sigma(sigma, params, opts);
  TravelingWave w = assemble_wave(params, opts, sigma, pt, R_b);
  w.other_sigma_roots.assign(roots.begin() + 1, roots.end());
  return w;
}

}  // namespace hstw
