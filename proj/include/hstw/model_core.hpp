#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hstw {

enum class NutrientModel { InVitro, InVivo };

std::string to_string(NutrientModel model);
NutrientModel parse_model(const std::string& name);

// Growth law G(c). The step form is piecewise constant with G(c_bar) = -g_minus.
// The smooth form wraps an arbitrary nondecreasing callable.
class GrowthLaw {
 public:
  enum class Kind { Step, Smooth };

  static GrowthLaw step(double g_plus, double g_minus, double c_bar);

  // `kinks` lists concentrations where the callable is only piecewise smooth;
  // quadrature splits its panels there.
  static GrowthLaw smooth(std::function<double(double)> fn, double c_bar,
                          std::vector<double> kinks = {});

  // C^1 regularisation of the step law: equal to -g_minus below
  // c_bar - width, g_plus above c_bar + width, zero at c_bar.
  static GrowthLaw mollified_step(double g_plus, double g_minus, double c_bar,
                                  double width);

  double operator()(double c) const;

  Kind kind() const { return kind_; }
  bool is_step() const { return kind_ == Kind::Step; }
  double threshold() const { return c_bar_; }
  // Rate of decay in the necrotic tail, -G(0).
  double tail_rate() const { return -(*this)(0.0); }
  // Step parameters; for smooth laws these are G evaluated at the ends of the
  // admissible range and are informational only.
  double g_plus() const { return g_plus_; }
  double g_minus() const { return g_minus_; }
  const std::vector<double>& kinks() const { return kinks_; }

 private:
  GrowthLaw() = default;

  Kind kind_ = Kind::Step;
  double g_plus_ = 0.0;
  double g_minus_ = 0.0;
  double c_bar_ = 0.0;
  std::function<double(double)> fn_;
  std::vector<double> kinks_;
};

// Consumption law psi(n).
class ConsumptionLaw {
 public:
  enum class Kind { Step, Smooth };

  // psi(0) = 0, psi(n) = lambda*n_c on (0,1), psi(n) = lambda for n >= 1.
  static ConsumptionLaw step(double lambda, double n_c);

  // Checks psi(0) = 0, 0 < psi <= psi(1) on a sample grid of (0,1), and that
  // the integral of psi(z)/z over (0,1) converges. Throws InvalidParams.
  // `checked = false` skips the hypotheses (degenerate laws in tests).
  static ConsumptionLaw smooth(std::function<double(double)> fn,
                               std::vector<double> kinks = {},
                               bool checked = true);

  // C^1 regularisation of the step law: the jump at n = 1 is spread over
  // [1 - width, 1] and the jump at n = 0 over [0, zero_width].
  static ConsumptionLaw mollified_step(double lambda, double n_c, double width,
                                       double zero_width = 1e-20);

  double operator()(double n) const;

  Kind kind() const { return kind_; }
  bool is_step() const { return kind_ == Kind::Step; }
  // Step laws break the C^1 hypothesis of the shooting construction.
  bool analytic_only() const { return kind_ == Kind::Step; }
  double at_full() const { return (*this)(1.0); }
  double lambda() const { return lambda_; }
  double n_c() const { return n_c_; }
  // Integral of psi(z)/z over (0,1). Infinite for the step law.
  double tail_integral() const { return tail_integral_; }
  const std::vector<double>& kinks() const { return kinks_; }

 private:
  ConsumptionLaw() = default;

  Kind kind_ = Kind::Step;
  double lambda_ = 0.0;
  double n_c_ = 0.0;
  double tail_integral_ = 0.0;
  std::function<double(double)> fn_;
  std::vector<double> kinks_;
};

struct WaveParameters {
  double c_B = 1.0;
  GrowthLaw growth = GrowthLaw::step(21.0, 30.0, 0.6);
  ConsumptionLaw consumption = ConsumptionLaw::step(2.0, 0.5);
  double gamma = 50.0;
  NutrientModel model = NutrientModel::InVitro;

  // Throws InvalidParams for non-positive inputs or c_B <= c_bar, and NoWave
  // for the in vivo model when c_bar >= c_B/2.
  void validate() const;

  bool both_step() const { return growth.is_step() && consumption.is_step(); }
};

// The parameter set used for the one-dimensional runs: lambda = 2, n_c = 0.5,
// g+ = 21, g- = 30, c_bar = 0.6, c_B = 1, gamma = 50.
WaveParameters reference_parameters(NutrientModel model = NutrientModel::InVitro);

double eval_growth(const GrowthLaw& law, double c);
double eval_consumption(const ConsumptionLaw& law, double n);
double pressure(double n, double gamma);

}  // namespace hstw
