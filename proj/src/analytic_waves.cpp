#include "hstw/analytic_waves.hpp"

#include <algorithm>
#include <cmath>

#include "hstw/errors.hpp"
#include "hstw/numerics.hpp"

namespace hstw {

std::string to_string(SolverKind solver) {
  return solver == SolverKind::Analytic ? "analytic" : "general";
}

StepConstants StepConstants::from(const WaveParameters& params) {
  if (!params.both_step()) {
    throw SolverError(ErrorKind::InvalidParams,
                      "analytic solver needs step growth and consumption laws");
  }
  return StepConstants{params.consumption.lambda(), params.consumption.n_c(),
                       params.growth.g_plus(),      params.growth.g_minus(),
                       params.growth.threshold(),   params.c_B};
}

double StepConstants::sqrt_lambda() const { return std::sqrt(lambda); }
double StepConstants::xi() const { return std::sqrt(lambda * n_c); }
double StepConstants::alpha() const {
  return std::sqrt(g_minus / (g_plus + g_minus));
}

double invitro_matching(const StepConstants& k, double R) {
  const double L = k.sqrt_lambda() * R;
  const double inner = (1.0 - k.alpha()) * L;
  const double sn = std::sqrt(k.n_c);
  return (k.c_bar / k.c_B) * (std::cosh(L) + sn * std::sinh(L)) -
         sn * std::sinh(inner) - std::cosh(inner);
}

namespace {

// invitro_matching scaled by 2 exp(-sqrt(lambda) R); same sign, no overflow.
double invitro_matching_scaled(const StepConstants& k, double R) {
  const double L = k.sqrt_lambda() * R;
  const double a = k.alpha();
  const double sn = std::sqrt(k.n_c);
  const double e2 = std::exp(-2.0 * L);
  const double ea = std::exp(-a * L);
  const double eb = std::exp(-(2.0 - a) * L);
  return (k.c_bar / k.c_B) * ((1.0 + e2) + sn * (1.0 - e2)) -
         sn * (ea - eb) - (ea + eb);
}

double vivo_ratio(const StepConstants& k) {
  const double sn = std::sqrt(k.n_c);
  return (1.0 - sn) / (1.0 + sn);
}

}  // namespace

double invivo_matching(const StepConstants& k, double R) {
  const double L = k.sqrt_lambda() * R;
  const double a = k.alpha();
  return 0.5 * k.c_B *
             (std::exp(-a * L) + vivo_ratio(k) * std::exp((a - 2.0) * L)) -
         k.c_bar;
}

double solve_R_invitro(const WaveParameters& params) {
  WaveParameters p = params;
  p.model = NutrientModel::InVitro;
  p.validate();
  const StepConstants k = StepConstants::from(p);
  const auto f = [&k](double R) { return invitro_matching_scaled(k, R); };
  const double cap = 1e3 / k.sqrt_lambda();
  const Bracket b = grow_bracket(f, 1e-8, 1.0, cap);
  return bisect(f, b, 1e-15, 1e-14);
}

double solve_R_invivo(const WaveParameters& params) {
  WaveParameters p = params;
  p.model = NutrientModel::InVivo;
  p.validate();
  const StepConstants k = StepConstants::from(p);
  const auto f = [&k](double R) { return invivo_matching(k, R); };
  const double cap = 1e3 / k.sqrt_lambda();
  const Bracket b = grow_bracket(f, 1e-8, 1.0, cap);
  return bisect(f, b, 1e-15, 1e-14);
}

double sigma_from_R(double R, double g_plus, double g_minus) {
  return R * (std::sqrt((g_plus + g_minus) * g_minus) - g_minus);
}

std::vector<double> default_profile_grid(double R, double x1,
                                         std::size_t samples) {
  samples = std::max<std::size_t>(samples, 64);
  const double tail_len = 5.0 * R + 5.0;
  const double healthy_len = 5.0;
  const std::size_t n_tail = samples * 2 / 5;
  const std::size_t n_healthy = samples / 5;
  const std::size_t n_rim = samples - n_tail - n_healthy;

  std::vector<double> x;
  x.reserve(samples + 2);
  // Geometric clustering towards 0 with ratio e^q over the tail.
  constexpr double q = 6.0;
  const double denom = std::expm1(q);
  for (std::size_t i = n_tail; i >= 1; --i) {
    const double u = static_cast<double>(i) / static_cast<double>(n_tail);
    x.push_back(-tail_len * std::expm1(q * u) / denom);
  }
  for (std::size_t i = 0; i < n_rim; ++i) {
    x.push_back(R * static_cast<double>(i) / static_cast<double>(n_rim - 1));
  }
  for (std::size_t i = 1; i <= n_healthy; ++i) {
    x.push_back(R + healthy_len * static_cast<double>(i) /
                        static_cast<double>(n_healthy));
  }
  if (x1 > 0.0 && x1 < R) x.push_back(x1);
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

TravelingWave build_profile(const WaveParameters& params, double R,
                            double sigma, std::span<const double> grid) {
  const StepConstants k = StepConstants::from(params);
  const double sl = k.sqrt_lambda();
  const double xi = k.xi();
  const double a = k.alpha();
  const double x1 = (1.0 - a) * R;
  const double gp = k.g_plus;
  const double gm = k.g_minus;
  const bool vitro = params.model == NutrientModel::InVitro;

  TravelingWave w;
  w.model = params.model;
  w.solver = SolverKind::Analytic;
  w.R = R;
  w.sigma = sigma;
  w.x1 = x1;
  w.alpha = a;
  w.A = xi;
  w.shooting_residual = 0.0;

  const double LR = sl * R;
  double c_rim_coef = 0.0;  // multiplies sinh(...) in vitro, e^{...} in vivo
  if (vitro) {
    w.c_R_prime = k.c_B * (xi * std::cosh(LR) + sl * std::sinh(LR)) /
                  (xi * std::sinh(LR) + sl * std::cosh(LR));
    w.c0 = k.c_B * std::cosh(LR) - w.c_R_prime * std::sinh(LR);
    w.c0_prime = sl * (w.c_R_prime * std::cosh(LR) - k.c_B * std::sinh(LR));
    w.root_residual = invitro_matching(k, R);
    c_rim_coef = w.c_R_prime;
  } else {
    w.c_R_prime = 0.5 * k.c_B * (1.0 - vivo_ratio(k) * std::exp(-2.0 * LR));
    w.c0 = k.c_B * std::cosh(LR) - w.c_R_prime * std::exp(LR);
    w.c0_prime = sl * (w.c_R_prime * std::exp(LR) - k.c_B * std::sinh(LR));
    w.root_residual = invivo_matching(k, R);
    c_rim_coef = w.c_R_prime;
  }

  const auto rim_c = [&](double x) {
    const double z = sl * (x - R);
    return vitro ? k.c_B * std::cosh(z) + c_rim_coef * std::sinh(z)
                 : k.c_B * std::cosh(z) - c_rim_coef * std::exp(-z);
  };

  WaveProfile& prof = w.profile;
  const std::size_t n = grid.size();
  prof.x.assign(grid.begin(), grid.end());
  prof.n.resize(n);
  prof.c.resize(n);
  prof.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    if (x < 0.0) {
      prof.n[i] = std::exp(gm * x / sigma);
      prof.c[i] = w.c0 * std::exp(xi * x);
      prof.p[i] = 0.0;
    } else if (x <= R) {
      prof.n[i] = 1.0;
      prof.c[i] = rim_c(x);
      if (x <= x1) {
        prof.p[i] = 0.5 * gm * x * x;
      } else if (x < R) {
        const double d = x - x1;
        prof.p[i] = -0.5 * gp * d * d + gm * x1 * d + 0.5 * gm * x1 * x1;
      } else {
        prof.p[i] = 0.0;
      }
    } else {
      prof.n[i] = 0.0;
      prof.p[i] = 0.0;
      prof.c[i] = vitro ? k.c_B
                        : k.c_B - w.c_R_prime * std::exp(sl * (R - x));
    }
  }
  return w;
}

TravelingWave solve_analytic(const WaveParameters& params,
                             std::size_t samples) {
  const double R = params.model == NutrientModel::InVitro
                       ? solve_R_invitro(params)
                       : solve_R_invivo(params);
  const StepConstants k = StepConstants::from(params);
  const double sigma = sigma_from_R(R, k.g_plus, k.g_minus);
  const auto grid = default_profile_grid(R, (1.0 - k.alpha()) * R, samples);
  return build_profile(params, R, sigma, grid);
}

ModelComparison compare_models(const WaveParameters& params) {
  WaveParameters vitro = params;
  vitro.model = NutrientModel::InVitro;
  WaveParameters vivo = params;
  vivo.model = NutrientModel::InVivo;

  ModelComparison out;
  out.vitro = solve_analytic(vitro);
  out.vivo = solve_analytic(vivo);
  constexpr double slack = 1e-12;
  out.ordering_ok = out.vivo.R <= out.vitro.R + slack &&
                    out.vivo.sigma <= out.vitro.sigma + slack;
  return out;
}

}  // namespace hstw
