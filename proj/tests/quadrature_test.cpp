#include <cmath>

#include <doctest.h>

#include "cwig/quadrature.hpp"
#include "cwig/specfun.hpp"

using namespace cwig;

namespace {
const quad::Config tight{1e-12, 1e-12, 12, 4000000};
}

TEST_CASE("tanh-sinh on finite intervals") {
  auto one = quad::tanhsinh_finite([](double) { return 1.0; }, 0.0, 1.0, tight);
  CHECK(one.converged);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-13));

  // endpoint singularity absorbed by the double-exponential map
  auto invsqrt =
      quad::tanhsinh_finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight);
  CHECK(invsqrt.converged);
  CHECK(invsqrt.value == doctest::Approx(2.0).epsilon(1e-12));

  // series oracle: int_0^1 log(x) log(1-x) dx = 2 - pi^2/6 = sum 1/(k (k+1)^2)
  double series = 0.0;
  for (int k = 200000; k >= 1; --k) series += 1.0 / (double(k) * (k + 1.0) * (k + 1.0));
  auto loglog = quad::tanhsinh_finite(
      [](double x) { return std::log(x) * std::log(1.0 - x); }, 0.0, 1.0, tight);
  CHECK(loglog.converged);
  CHECK(loglog.value == doctest::Approx(series).epsilon(1e-10));
  CHECK(loglog.value ==
        doctest::Approx(2.0 - specfun::kPi * specfun::kPi / 6.0).epsilon(1e-11));
}

TEST_CASE("semi-infinite integrals") {
  auto expdecay =
      quad::integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, tight);
  CHECK(expdecay.converged);
  CHECK(expdecay.value == doctest::Approx(1.0).epsilon(1e-12));

  auto xgauss = quad::integrate_semi_infinite(
      [](double x) { return x * std::exp(-x * x); }, 0.0, tight);
  CHECK(xgauss.value == doctest::Approx(0.5).epsilon(1e-12));

  // int_0^inf e^{-r^2} L_1(2r^2) r dr: the moments are 1/2 and 2*(1/2), so
  // the signed integral is -1/2, matching the identity
  // int_0^inf e^{-r^2} L_n(2r^2) r dr = (-1)^n / 2
  auto l1moment = quad::integrate_semi_infinite(
      [](double r) {
        return std::exp(-r * r) * specfun::laguerre(1, 2.0 * r * r) * r;
      },
      0.0, tight);
  CHECK(l1moment.value == doctest::Approx(-0.5).epsilon(1e-12));
  auto l2moment = quad::integrate_semi_infinite(
      [](double r) {
        return std::exp(-r * r) * specfun::laguerre(2, 2.0 * r * r) * r;
      },
      0.0, tight);
  CHECK(l2moment.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("real-line integrals") {
  auto gauss =
      quad::integrate_real_line([](double x) { return std::exp(-x * x); }, tight);
  CHECK(gauss.value == doctest::Approx(std::sqrt(specfun::kPi)).epsilon(1e-12));

  auto laplace =
      quad::integrate_real_line([](double x) { return std::exp(-std::abs(x)); }, tight);
  CHECK(laplace.value == doctest::Approx(2.0).epsilon(1e-12));

  // residue oracle: int dx/(1+x^2)^2 = pi/2
  auto lorentz2 = quad::integrate_real_line(
      [](double x) { return 1.0 / std::pow(1.0 + x * x, 2.0); }, tight);
  CHECK(lorentz2.value == doctest::Approx(0.5 * specfun::kPi).epsilon(1e-12));
}

TEST_CASE("even-function symmetry between real-line and half-line rules") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(x); };
  auto full = quad::integrate_real_line(f, tight);
  auto half = quad::integrate_semi_infinite(f, 0.0, tight);
  CHECK(full.value == doctest::Approx(2.0 * half.value).epsilon(1e-12));
}

TEST_CASE("level refinement does not increase the error estimate on smooth integrands") {
  double prev_err = 1e300;
  for (int level = 4; level <= 8; ++level) {
    quad::Config c;
    c.abs_tol = 1e-15;
    c.rel_tol = 1e-15;  // unreachable: force the full level budget
    c.max_level = level;
    auto r = quad::tanhsinh_finite([](double x) { return std::exp(x) * std::sin(3.0 * x); },
                                   0.0, 2.0, c);
    CHECK(r.error_estimate <= prev_err * (1.0 + 1e-12));
    prev_err = r.error_estimate;
  }
}

TEST_CASE("2D iterated integrals") {
  auto gauss2 = quad::integrate_2d(
      [](double x, double p) { return std::exp(-x * x - p * p); },
      {-quad::kInf, quad::kInf}, {-quad::kInf, quad::kInf}, quad::Config{1e-9, 1e-9, 12});
  CHECK(gauss2.converged);
  CHECK(gauss2.value == doctest::Approx(specfun::kPi).epsilon(1e-8));

  // polar-coordinates oracle: iint e^{-r^2} r^2 = pi
  auto moment2 = quad::integrate_2d(
      [](double x, double p) { return std::exp(-x * x - p * p) * (x * x + p * p); },
      {-quad::kInf, quad::kInf}, {-quad::kInf, quad::kInf}, quad::Config{1e-9, 1e-9, 12});
  CHECK(moment2.value == doctest::Approx(specfun::kPi).epsilon(1e-8));
}

TEST_CASE("non-convergence is reported, not thrown") {
  quad::Config starved;
  starved.abs_tol = 1e-14;
  starved.rel_tol = 1e-14;
  starved.max_level = 3;
  auto r = quad::tanhsinh_finite(
      [](double x) { return std::cos(40.0 * x) * std::log(std::abs(x - 0.3537)); }, 0.0,
      1.0, starved);
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations > 0);
}

TEST_CASE("split integration at interior breakpoints") {
  // |x - 1/3| has a kink; splitting there restores fast convergence
  auto f = [](double x) { return std::sqrt(std::abs(x - 1.0 / 3.0)); };
  auto split = quad::integrate_1d_split(f, {0.0, 1.0}, {1.0 / 3.0}, tight);
  double exact = 2.0 / 3.0 * (std::pow(1.0 / 3.0, 1.5) + std::pow(2.0 / 3.0, 1.5));
  CHECK(split.converged);
  CHECK(split.value == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("oscillatory semi-infinite tails") {
  // int_0^inf cos(x)/(1+x^2) dx = pi/(2e)
  auto r = quad::oscillatory_semi_infinite(
      [](double x) { return std::cos(x) / (1.0 + x * x); }, 0.0, specfun::kPi, 10.0,
      quad::Config{1e-11, 1e-11, 12});
  CHECK(r.value == doctest::Approx(specfun::kPi / (2.0 * std::exp(1.0))).epsilon(1e-10));

  // algebraic decay with undamped oscillation:
  // int_0^inf x sin(x)/(1+x^2) dx = pi/(2e)
  auto r2 = quad::oscillatory_semi_infinite(
      [](double x) { return x * std::sin(x) / (1.0 + x * x); }, 0.0, specfun::kPi, 10.0,
      quad::Config{1e-10, 1e-10, 12});
  CHECK(r2.value == doctest::Approx(specfun::kPi / (2.0 * std::exp(1.0))).epsilon(1e-8));
}

TEST_CASE("sign-change detection") {
  auto zeros = quad::find_sign_changes([](double x) { return std::sin(x); }, 0.1, 10.0, 0.37);
  REQUIRE(zeros.size() == 3);
  CHECK(zeros[0] == doctest::Approx(specfun::kPi).epsilon(1e-12));
  CHECK(zeros[1] == doctest::Approx(2.0 * specfun::kPi).epsilon(1e-12));
  CHECK(zeros[2] == doctest::Approx(3.0 * specfun::kPi).epsilon(1e-12));
}
