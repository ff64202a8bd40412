#include "hstw/model_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hstw/errors.hpp"
#include "hstw/numerics.hpp"

namespace hstw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NoWave: return "NoWave";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorKind::SingularPivot: return "SingularPivot";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::StepPsiUnsupported: return "StepPsiUnsupported";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::CFLViolation: return "CFLViolation";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
  }
  return "Unknown";
}

std::string to_string(NutrientModel model) {
  return model == NutrientModel::InVitro ? "vitro" : "vivo";
}

NutrientModel parse_model(const std::string& name) {
  if (name == "vitro" || name == "in_vitro" || name == "invitro") {
    return NutrientModel::InVitro;
  }
  if (name == "vivo" || name == "in_vivo" || name == "invivo") {
    return NutrientModel::InVivo;
  }
  throw SolverError(ErrorKind::InvalidParams, "unknown model '" + name + "'");
}

namespace {

// C^1 ramp on [0, 1], clamped outside.
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw SolverError(ErrorKind::InvalidParams, what);
}

}  // namespace

GrowthLaw GrowthLaw::step(double g_plus, double g_minus, double c_bar) {
  require(g_plus > 0.0 && g_minus > 0.0, "growth: rates must be positive");
  require(c_bar > 0.0, "growth: c_bar must be positive");
  GrowthLaw law;
  law.kind_ = Kind::Step;
  law.g_plus_ = g_plus;
  law.g_minus_ = g_minus;
  law.c_bar_ = c_bar;
  law.kinks_ = {c_bar};
  return law;
}

GrowthLaw GrowthLaw::smooth(std::function<double(double)> fn, double c_bar,
                            std::vector<double> kinks) {
  require(static_cast<bool>(fn), "growth: empty callable");
  require(c_bar > 0.0, "growth: c_bar must be positive");
  GrowthLaw law;
  law.kind_ = Kind::Smooth;
  law.fn_ = std::move(fn);
  law.c_bar_ = c_bar;
  law.kinks_ = std::move(kinks);
  const double g0 = law.fn_(0.0);
  require(g0 < 0.0, "growth: G(0) must be negative");
  require(std::abs(law.fn_(c_bar)) <= 1e-9 * std::max(1.0, -g0),
          "growth: G(c_bar) must vanish");
  law.g_minus_ = -g0;
  law.g_plus_ = law.fn_(2.0 * c_bar);
  return law;
}

GrowthLaw GrowthLaw::mollified_step(double g_plus, double g_minus, double c_bar,
                                    double width) {
  require(g_plus > 0.0 && g_minus > 0.0, "growth: rates must be positive");
  require(width > 0.0 && width < c_bar, "growth: width must be in (0, c_bar)");
  auto fn = [=](double c) {
    if (c < c_bar) return -g_minus * smoothstep((c_bar - c) / width);
    return g_plus * smoothstep((c - c_bar) / width);
  };
  GrowthLaw law = smooth(fn, c_bar, {c_bar - width, c_bar, c_bar + width});
  law.g_plus_ = g_plus;
  law.g_minus_ = g_minus;
  return law;
}

double GrowthLaw::operator()(double c) const {
  if (kind_ == Kind::Step) return c > c_bar_ ? g_plus_ : -g_minus_;
  return fn_(c);
}

ConsumptionLaw ConsumptionLaw::step(double lambda, double n_c) {
  require(lambda > 0.0, "consumption: lambda must be positive");
  require(n_c > 0.0 && n_c < 1.0, "consumption: n_c must be in (0,1)");
  ConsumptionLaw law;
  law.kind_ = Kind::Step;
  law.lambda_ = lambda;
  law.n_c_ = n_c;
  law.tail_integral_ = std::numeric_limits<double>::infinity();
  return law;
}

namespace {

// Integral of psi(z)/z over (eps, 1] in the variable t = ln z, refined one
// block of eight decades at a time until the increments stop mattering.
double consumption_tail_integral(const std::function<double(double)>& psi,
                                 const std::vector<double>& kinks) {
  std::vector<double> t_kinks;
  for (double z : kinks) {
    if (z > 0.0 && z < 1.0) t_kinks.push_back(std::log(z));
  }
  const auto integrand = [&psi](double t) { return psi(std::exp(t)); };
  const double block = 8.0 * std::log(10.0);
  double total = 0.0;
  double hi = 0.0;
  // 37 blocks reach z = 1e-296, just above the smallest normal double.
  for (int level = 0; level < 37; ++level) {
    const double lo = hi - block;
    const double piece = gauss_integrate(integrand, lo, hi, 32, t_kinks);
    total += piece;
    if (level > 0 && std::abs(piece) <= 1e-10 * (1.0 + std::abs(total))) {
      return total;
    }
    hi = lo;
  }
  throw SolverError(ErrorKind::InvalidParams,
                    "consumption: integral of psi(z)/z diverges at z = 0");
}

}  // namespace

ConsumptionLaw ConsumptionLaw::smooth(std::function<double(double)> fn,
                                      std::vector<double> kinks, bool checked) {
  require(static_cast<bool>(fn), "consumption: empty callable");
  ConsumptionLaw law;
  law.kind_ = Kind::Smooth;
  law.fn_ = std::move(fn);
  law.kinks_ = std::move(kinks);
  law.lambda_ = law.fn_(1.0);
  law.n_c_ = 1.0;
  if (!checked) {
    law.tail_integral_ = consumption_tail_integral(law.fn_, law.kinks_);
    return law;
  }
  const double psi1 = law.lambda_;
  require(psi1 > 0.0, "consumption: psi(1) must be positive");
  require(std::abs(law.fn_(0.0)) <= 1e-12 * psi1,
          "consumption: psi(0) must vanish");
  for (int i = 1; i < 1000; ++i) {
    const double z = i / 1000.0;
    const double v = law.fn_(z);
    require(v > 0.0 && v <= psi1 * (1.0 + 1e-12),
            "consumption: need 0 < psi(z) <= psi(1) on (0,1)");
  }
  for (int e = 4; e <= 12; ++e) {
    const double v = law.fn_(std::pow(10.0, -e));
    require(v > 0.0 && v <= psi1 * (1.0 + 1e-12),
            "consumption: need 0 < psi(z) <= psi(1) near z = 0");
  }
  law.tail_integral_ = consumption_tail_integral(law.fn_, law.kinks_);
  return law;
}

ConsumptionLaw ConsumptionLaw::mollified_step(double lambda, double n_c,
                                              double width, double zero_width) {
  require(lambda > 0.0, "consumption: lambda must be positive");
  require(n_c > 0.0 && n_c < 1.0, "consumption: n_c must be in (0,1)");
  require(width > 0.0 && width < 0.5, "consumption: width must be in (0,0.5)");
  require(zero_width > 0.0 && zero_width < 1.0 - width,
          "consumption: zero_width out of range");
  auto fn = [=](double n) {
    if (n <= 0.0) return 0.0;
    if (n >= 1.0) return lambda;
    return lambda * n_c * smoothstep(n / zero_width) +
           lambda * (1.0 - n_c) * smoothstep((n - (1.0 - width)) / width);
  };
  ConsumptionLaw law = smooth(fn, {zero_width, 1.0 - width});
  law.n_c_ = n_c;
  return law;
}

double ConsumptionLaw::operator()(double n) const {
  if (kind_ == Kind::Step) {
    if (n <= 0.0) return 0.0;
    if (n >= 1.0) return lambda_;
    return lambda_ * n_c_;
  }
  return fn_(n);
}

void WaveParameters::validate() const {
  require(c_B > 0.0, "c_B must be positive");
  require(gamma >= 1.0, "gamma must be >= 1");
  const double c_bar = growth.threshold();
  if (!(c_B > c_bar)) {
    std::ostringstream msg;
    msg << "no traveling wave: c_bar >= c_B (c_bar=" << c_bar
        << ", c_B=" << c_B << ")";
    throw SolverError(ErrorKind::InvalidParams, msg.str());
  }
  if (model == NutrientModel::InVivo && !(c_bar < 0.5 * c_B)) {
    throw SolverError(ErrorKind::NoWave, "no traveling wave: c_bar >= c_B/2");
  }
}

WaveParameters reference_parameters(NutrientModel model) {
  WaveParameters p;
  p.model = model;
  p.c_B = 1.0;
  p.gamma = 50.0;
  p.consumption = ConsumptionLaw::step(2.0, 0.5);
  p.growth = GrowthLaw::step(21.0, 30.0,
                             model == NutrientModel::InVitro ? 0.6 : 0.3);
  return p;
}

double eval_growth(const GrowthLaw& law, double c) { return law(c); }

double eval_consumption(const ConsumptionLaw& law, double n) { return law(n); }

double pressure(double n, double gamma) {
  if (n <= 0.0) return 0.0;
  return std::exp(gamma * std::log(n));
}

}  // namespace hstw
