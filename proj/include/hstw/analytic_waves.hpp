#pragma once

#include <span>
#include <vector>

#include "hstw/model_core.hpp"
#include "hstw/wave.hpp"

namespace hstw {

// Step-law constants pulled out of a WaveParameters.
struct StepConstants {
  double lambda;
  double n_c;
  double g_plus;
  double g_minus;
  double c_bar;
  double c_B;

  static StepConstants from(const WaveParameters& params);

  double sqrt_lambda() const;
  double xi() const;     // sqrt(lambda * n_c)
  double alpha() const;  // sqrt(g- / (g+ + g-))
};

inline constexpr double kAnalyticRootTol = 1e-10;

// In vitro matching function; its unique positive root is R.
double invitro_matching(const StepConstants& k, double R);
// In vivo matching function minus c_bar; nonincreasing in R.
double invivo_matching(const StepConstants& k, double R);

double solve_R_invitro(const WaveParameters& params);
double solve_R_invivo(const WaveParameters& params);

double sigma_from_R(double R, double g_plus, double g_minus);

// Default sample grid: the tail [-5R-5, 0) is sampled logarithmically denser
// towards 0, the rim and the healthy region uniformly. Contains 0, x1 and R.
std::vector<double> default_profile_grid(double R, double x1,
                                         std::size_t samples = 4096);

TravelingWave build_profile(const WaveParameters& params, double R,
                            double sigma, std::span<const double> grid);

// Solves for R, sigma and fills the profile on the default grid.
TravelingWave solve_analytic(const WaveParameters& params,
                             std::size_t samples = 4096);

struct ModelComparison {
  TravelingWave vitro;
  TravelingWave vivo;
  bool ordering_ok = false;
};

ModelComparison compare_models(const WaveParameters& params);

}  // namespace hstw
