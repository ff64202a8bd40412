#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "hstw/analytic_waves.hpp"
#include "hstw/errors.hpp"

using namespace hstw;

namespace {

// Reference roots from tests/oracles/oracles.py (40-digit bisection).
constexpr double kRVitro = 0.5419348631492025607;
constexpr double kSigmaVitro = 4.9398524853566208448;
constexpr double kRVivo = 0.5734400293165415214;
constexpr double kSigmaVivo = 5.2270288306630036225;
constexpr double kRVitroCB2 = 1.174514366229178058;
constexpr double kSpeedFactor = 9.1152144312158922875;  // sqrt(1530) - 30

WaveParameters vivo_params(double c_bar) {
  WaveParameters p = reference_parameters(NutrientModel::InVivo);
  p.growth = GrowthLaw::step(21.0, 30.0, c_bar);
  return p;
}

}  // namespace

TEST_CASE("step constants") {
  const auto k = StepConstants::from(reference_parameters());
  CHECK(k.xi() == doctest::Approx(1.0));
  CHECK(k.alpha() == doctest::Approx(std::sqrt(30.0 / 51.0)));
  CHECK(k.sqrt_lambda() == doctest::Approx(std::sqrt(2.0)));
  CHECK(sigma_from_R(1.0, 21.0, 30.0) ==
        doctest::Approx(kSpeedFactor).epsilon(1e-15));
}

TEST_CASE("matching functions at R = 0") {
  const auto kv = StepConstants::from(reference_parameters());
  CHECK(invitro_matching(kv, 0.0) == doctest::Approx(0.6 - 1.0));
  const auto kw = StepConstants::from(vivo_params(0.3));
  // (c_B/2)(1 + k) - c_bar with k = (1 - sqrt(1/2))/(1 + sqrt(1/2)).
  CHECK(invivo_matching(kw, 0.0) ==
        doctest::Approx(0.2857864376269049512).epsilon(1e-14));
}

TEST_CASE("matching functions change sign once") {
  const auto kv = StepConstants::from(reference_parameters());
  const auto kw = StepConstants::from(vivo_params(0.3));
  for (int i = 1; i <= 400; ++i) {
    const double R = 5.0 * i / 400.0;
    if (R < kRVitro - 1e-9) CHECK(invitro_matching(kv, R) < 0.0);
    if (R > kRVitro + 1e-9) CHECK(invitro_matching(kv, R) > 0.0);
    const double prev = invivo_matching(kw, R - 5.0 / 400.0);
    CHECK(invivo_matching(kw, R) <= prev);
  }
}

TEST_CASE("in vitro golden root") {
  const WaveParameters p = reference_parameters();
  const double R = solve_R_invitro(p);
  CHECK(R == doctest::Approx(kRVitro).epsilon(1e-13));
  CHECK(std::abs(invitro_matching(StepConstants::from(p), R)) <=
        kAnalyticRootTol);
  const TravelingWave w = solve_analytic(p);
  CHECK(w.sigma == doctest::Approx(kSigmaVitro).epsilon(1e-12));
  CHECK(w.sigma == doctest::Approx(kSpeedFactor * w.R).epsilon(1e-14));
  CHECK(w.A == doctest::Approx(1.0));
  CHECK(w.x1 > 0.0);
  CHECK(w.x1 < w.R);
  CHECK(w.solver == SolverKind::Analytic);

  WaveParameters p2 = p;
  p2.c_B = 2.0;
  CHECK(solve_R_invitro(p2) == doctest::Approx(kRVitroCB2).epsilon(1e-12));
}

TEST_CASE("in vivo golden root and nonexistence") {
  const WaveParameters p = vivo_params(0.3);
  CHECK(solve_R_invivo(p) == doctest::Approx(kRVivo).epsilon(1e-13));
  CHECK(solve_analytic(p).sigma == doctest::Approx(kSigmaVivo).epsilon(1e-12));

  try {
    solve_analytic(vivo_params(0.6));
    FAIL("expected NoWave");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::NoWave);
  }
}

TEST_CASE("profile invariants") {
  for (const auto& p : {reference_parameters(), vivo_params(0.3)}) {
    const TravelingWave w = solve_analytic(p, 4096);
    const auto& pr = w.profile;
    REQUIRE(pr.x.size() >= 4096);
    bool has0 = false, hasR = false;
    for (std::size_t i = 0; i < pr.x.size(); ++i) {
      if (i > 0) {
        CHECK(pr.x[i] > pr.x[i - 1]);
        CHECK(pr.c[i] >= pr.c[i - 1] - 1e-14);
      }
      CHECK(pr.p[i] >= 0.0);
      if (pr.x[i] == 0.0) {
        has0 = true;
        CHECK(pr.p[i] == 0.0);
      }
      if (pr.x[i] == w.R) {
        hasR = true;
        CHECK(pr.p[i] == 0.0);
      }
      if (pr.x[i] < 0.0) {
        CHECK(pr.n[i] ==
              doctest::Approx(std::exp(30.0 * pr.x[i] / w.sigma))
                  .epsilon(1e-12));
      } else if (pr.x[i] <= w.R) {
        CHECK(pr.n[i] == 1.0);
      } else {
        CHECK(pr.n[i] == 0.0);
      }
    }
    CHECK(has0);
    CHECK(hasR);
    CHECK(pr.c.back() <= p.c_B + 1e-14);
  }
}

TEST_CASE("model comparison") {
  const ModelComparison cmp = compare_models(vivo_params(0.3));
  CHECK(cmp.ordering_ok);
  CHECK(cmp.vivo.R <= cmp.vitro.R);
  CHECK(cmp.vivo.sigma <= cmp.vitro.sigma);
}

TEST_CASE("analytic solve is fast") {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) solve_R_invitro(reference_parameters());
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  CHECK(ms / 100.0 < 10.0);
}
