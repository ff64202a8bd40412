#pragma once

#include <vector>

#include "hstw/model_core.hpp"
#include "hstw/numerics.hpp"
#include "hstw/wave.hpp"

namespace hstw {

struct GeneralSolverOptions {
  // Nominal cutoff of the shooting problem near y = 0. It is pushed further
  // towards 0 while psi has not decayed there (see effective_cutoff).
  double delta = kDefaultShootingCutoff;
  double slope_tol = 1e-10;
  double R_tol = 1e-12;
  double sigma_lo = 1e-6;
  int scan_intervals = 32;
  double fixed_point_rel_tol = 1e-8;
  int n_panels = kDefaultPanels;
  std::size_t profile_samples = 4096;
};

// Cutoff actually used: `delta` shrunk by factors of 100 until
// psi(delta) <= 1e-10 * psi(1), so that the truncated tail carries no weight.
double effective_cutoff(const ConsumptionLaw& psi, double delta);

struct ShootResult {
  double A = 0.0;
  double sigma = 0.0;
  double residual = 0.0;         // u~ at the cutoff for the last TypeII run
  double bound_sqrt_psi1 = 0.0;  // sqrt(psi(1))
  double bound_integral = 0.0;   // (sigma/g-) * int_0^1 psi(v)/v dv
  double cutoff = 0.0;
};

ShootResult shoot_A(double sigma, const WaveParameters& params,
                    const GeneralSolverOptions& opts = {});

// Nutrient on the rim as a function of the scaled distance s = (R - x)/R
// from the outer edge, once c'(0) = A c(0) has been imposed.
class GammaProfile {
 public:
  GammaProfile(NutrientModel model, double c_B, double psi1, double A,
               double R);

  double operator()(double s) const;
  double c_R_prime() const;  // c'(R)/sqrt(psi(1))
  double c0() const { return (*this)(1.0); }
  double R() const { return R_; }

 private:
  NutrientModel model_;
  double c_B_;
  double q_;  // sqrt(psi(1))
  double A_;
  double R_;
};

// int_0^1 s G(gamma(R,s)) ds and int_0^1 G(gamma(R,s)) ds, with quadrature
// panels split where gamma crosses the kinks of G.
double moment_sG(const GammaProfile& gamma, const GrowthLaw& growth,
                 int n_panels = kDefaultPanels);
double moment_G(const GammaProfile& gamma, const GrowthLaw& growth,
                int n_panels = kDefaultPanels);

double solve_R_sigma(double sigma, double A, const WaveParameters& params,
                     const GeneralSolverOptions& opts = {});

// Envelope radius bounding every R_sigma from above.
double compute_R_b(const WaveParameters& params,
                   const GeneralSolverOptions& opts = {});

// sigma - R_sigma * int_0^1 G(gamma_sigma(R_sigma, s)) ds.
double fixed_point_gap(double sigma, const WaveParameters& params,
                       const GeneralSolverOptions& opts = {});

TravelingWave solve_sigma(const WaveParameters& params,
                          const GeneralSolverOptions& opts = {});

}  // namespace hstw
