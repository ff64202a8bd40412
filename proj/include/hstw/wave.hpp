#pragma once

#include <limits>
#include <vector>

#include "hstw/model_core.hpp"

namespace hstw {

enum class SolverKind { Analytic, General };

std::string to_string(SolverKind solver);

struct WaveProfile {
  std::vector<double> x;
  std::vector<double> n;
  std::vector<double> c;
  std::vector<double> p;
};

// A traveling wave in the frame where the proliferative rim is [0, R], the
// necrotic tail is x < 0 and the healthy region is x > R.
struct TravelingWave {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  NutrientModel model = NutrientModel::InVitro;
  SolverKind solver = SolverKind::Analytic;
  double sigma = kNaN;
  double R = kNaN;
  double x1 = kNaN;         // where c crosses c_bar inside the rim
  double c_R_prime = kNaN;  // c'(R)/sqrt(psi(1))
  double c0 = kNaN;         // c(0)
  double c0_prime = kNaN;   // c'(0)
  double A = kNaN;          // c'(0)/c(0)
  double alpha = kNaN;      // (R - x1)/R
  double R_b = kNaN;        // envelope bound on R (general solver)

  // Residuals of the equations that fixed the wave.
  double root_residual = kNaN;         // matching equation for R
  double fixed_point_residual = kNaN;  // sigma equation (general solver)
  double shooting_residual = kNaN;     // terminal u~ of the tail shooting
  std::vector<double> other_sigma_roots;  // additional roots of the sigma scan

  WaveProfile profile;
};

}  // namespace hstw
