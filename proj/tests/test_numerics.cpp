#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hstw/errors.hpp"
#include "hstw/numerics.hpp"

using namespace hstw;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SolverError& e) {
    return e.kind();
  }
  FAIL("no SolverError thrown");
  return ErrorKind::InvalidParams;
}

ConsumptionLaw linear_psi() {
  return ConsumptionLaw::smooth(
      [](double n) { return 2.0 * std::clamp(n, 0.0, 1.0); });
}

}  // namespace

TEST_CASE("bisection") {
  const auto f = [](double x) { return std::cosh(x) - 2.0; };
  const double root = bisect(f, make_bracket(f, 0.0, 2.0), 1e-15, 0.0);
  CHECK(root == doctest::Approx(1.3169578969248167).epsilon(1e-14));

  CHECK(kind_of([&] { bisect(f, make_bracket(f, 2.0, 3.0), 1e-12, 0.0); }) ==
        ErrorKind::NoSignChange);
  CHECK(kind_of([&] {
          bisect(f, make_bracket(f, 0.0, 2.0), 0.0, 0.0, 5);
        }) == ErrorKind::MaxIterExceeded);

  const auto lin = [](double x) { return x - 0.25; };
  CHECK(bisect(lin, make_bracket(lin, 0.0, 1.0), 1e-12, 0.0) ==
        doctest::Approx(0.25));
}

TEST_CASE("bracket growth") {
  const auto f = [](double x) { return x - 37.0; };
  const Bracket b = grow_bracket(f, 1.0, 2.0, 1e3);
  CHECK(b.valid());
  CHECK(b.hi >= 37.0);
  CHECK(kind_of([&] { grow_bracket(f, 1.0, 2.0, 10.0); }) ==
        ErrorKind::NoSignChange);
}

TEST_CASE("Gauss quadrature is exact for cubics per panel") {
  CHECK(quad01([](double s) { return s * s * s * s * s * s * s; },
               QuadWeight::One, 1) == doctest::Approx(1.0 / 8.0));
  CHECK(quad01([](double s) { return s * s * s * s * s * s; }, QuadWeight::S,
               1) == doctest::Approx(1.0 / 8.0));
  CHECK(quad01([](double) { return 1.0; }, QuadWeight::S) ==
        doctest::Approx(0.5));
  const double kink[] = {0.3};
  CHECK(gauss_integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0,
                        2, kink) == doctest::Approx(0.29).epsilon(1e-14));
  CHECK(gauss_integrate([](double x) { return std::exp(x); }, 0.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("tridiagonal solve has small residual on random systems") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + 10 * trial;
    std::vector<double> lo(n), di(n), up(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = u(rng);
      up[i] = u(rng);
      di[i] = 2.5 + std::abs(u(rng));
      rhs[i] = u(rng);
    }
    const auto x = tridiag_solve(lo, di, up, rhs);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = di[i] * x[i] - rhs[i];
      if (i > 0) r += lo[i] * x[i - 1];
      if (i + 1 < n) r += up[i] * x[i + 1];
      res = std::max(res, std::abs(r));
    }
    CHECK(res < 1e-13);
  }
  const std::vector<double> z(3, 0.0), one(3, 1.0);
  CHECK(kind_of([&] { tridiag_solve(z, z, z, one); }) ==
        ErrorKind::SingularPivot);
}

TEST_CASE("Dormand-Prince integrator") {
  const OdeRhs<2> osc = [](double, const OdeState<2>& y) {
    return OdeState<2>{y[1], -y[0]};
  };
  const auto [t, y] = integrate_ode<2>(osc, 0.0, {1.0, 0.0}, 10.0, {});
  CHECK(t == doctest::Approx(10.0));
  CHECK(y[0] == doctest::Approx(std::cos(10.0)).epsilon(1e-9));
  CHECK(y[1] == doctest::Approx(-std::sin(10.0)).epsilon(1e-9));

  const OdeRhs<3> decay = [](double, const OdeState<3>& y) {
    return OdeState<3>{-y[0], -2.0 * y[1], 0.0};
  };
  const auto [tb, yb] = integrate_ode<3>(decay, 1.0, {1.0, 1.0, 5.0}, 0.0, {});
  CHECK(tb == doctest::Approx(0.0));
  CHECK(yb[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
  CHECK(yb[1] == doctest::Approx(std::exp(2.0)).epsilon(1e-10));
  CHECK(yb[2] == 5.0);

  int calls = 0;
  integrate_ode<2>(osc, 0.0, {1.0, 0.0}, 10.0, {},
                   [&](double, const OdeState<2>&) { return ++calls < 3; });
  CHECK(calls == 3);
}

TEST_CASE("shooting outcome is monotone in the initial slope") {
  const ConsumptionLaw psi = linear_psi();
  for (double sigma : {0.1, 1.0, 10.0}) {
    bool seen_two = false;
    for (int i = 0; i <= 40; ++i) {
      const double slope = 1.5 * i / 40.0;
      const auto o = integrate_shooting(sigma, 30.0, psi, slope);
      if (seen_two) CHECK(o.type_two());
      seen_two = seen_two || o.type_two();
    }
    CHECK(seen_two);
  }
  CHECK_FALSE(integrate_shooting(1.0, 30.0, psi, 0.0).type_two());
}

TEST_CASE("shooting degenerates with zero consumption") {
  const auto zero =
      ConsumptionLaw::smooth([](double) { return 0.0; }, {}, false);
  const auto o = integrate_shooting(1.0, 30.0, zero, 0.4);
  CHECK(o.type_two());
  CHECK(o.u_terminal == doctest::Approx(0.4));
  CHECK(o.c_terminal ==
        doctest::Approx(1.0 + 0.4 / 30.0 * std::log(kDefaultShootingCutoff)));
  CHECK_FALSE(integrate_shooting(1.0, 30.0, zero, 0.0).type_two());
}

TEST_CASE("shooting rejects the step consumption law") {
  CHECK(kind_of([] {
          integrate_shooting(1.0, 30.0, ConsumptionLaw::step(2.0, 0.5), 0.5);
        }) == ErrorKind::StepPsiUnsupported);
}
