#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cwig::specfun {

/// Constants appearing in the closed-form entropy expressions.
struct MathConstants {
  double euler_mascheroni = 0.5772156649015328606;
  double pi = 3.14159265358979323846;
  double log2 = 0.6931471805599453094;
};

inline constexpr double kEulerMascheroni = 0.5772156649015328606;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLog2 = 0.6931471805599453094;

/// Dense polynomial in ascending power order; length = degree + 1,
/// leading coefficient nonzero.
struct PolyCoefficients {
  int degree = 0;
  std::vector<double> coefficients;
};

/// Physicists' Hermite polynomial H_n(x), three-term recurrence.
double hermite(int n, double x);

/// Laguerre polynomial L_n(x), stable upward recurrence.
double laguerre(int n, double x);

/// Coefficients of H_n (ascending powers). Exact for n <= 20 in double.
PolyCoefficients hermite_coefficients(int n);

/// Coefficients of L_n (ascending powers).
PolyCoefficients laguerre_coefficients(int n);

/// Horner evaluation of a PolyCoefficients.
double evaluate(const PolyCoefficients& p, double x);

/// All n roots of L_n, ascending. Computed as eigenvalues of the
/// symmetric Jacobi matrix of the Laguerre weight, then Newton-polished
/// to |L_n(root)| < 1e-12. Throws std::runtime_error if polishing fails.
Eigen::ArrayXd laguerre_roots(int n);

/// Principal-value exponential integral Ei(x), x != 0.
/// Convergent series on (0, 40], asymptotic expansion beyond,
/// continued fraction for x < -1. Throws std::domain_error at x = 0.
double exp_integral_ei(double x);

/// Upper incomplete gamma Gamma(k, x) for integer k >= 1, via the finite
/// sum Gamma(k,x) = (k-1)! e^{-x} sum_{s<k} x^s/s!.
double incomplete_gamma_upper(int k, double x);

/// log Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

}  // namespace cwig::specfun
