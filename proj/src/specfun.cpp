#include "cwig/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cwig::specfun {

double hermite(int n, double x) {
  if (n < 0) throw std::domain_error("hermite: n must be >= 0");
  if (n == 0) return 1.0;
  if (n == 1) return 2.0 * x;
  double hm = 1.0, h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double hp = 2.0 * x * h - 2.0 * k * hm;
    hm = h;
    h = hp;
  }
  return h;
}

double laguerre(int n, double x) {
  if (n < 0) throw std::domain_error("laguerre: n must be >= 0");
  if (n == 0) return 1.0;
  if (n == 1) return 1.0 - x;
  double lm = 1.0, l = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    double lp = ((2.0 * k + 1.0 - x) * l - k * lm) / (k + 1.0);
    lm = l;
    l = lp;
  }
  return l;
}

PolyCoefficients hermite_coefficients(int n) {
  if (n < 0) throw std::domain_error("hermite_coefficients: n must be >= 0");
  // H_{k+1} = 2x H_k - 2k H_{k-1}, done on coefficient vectors.
  std::vector<double> hm{1.0};
  if (n == 0) return {0, hm};
  std::vector<double> h{0.0, 2.0};
  for (int k = 1; k < n; ++k) {
    std::vector<double> hp(k + 2, 0.0);
    for (size_t i = 0; i < h.size(); ++i) hp[i + 1] += 2.0 * h[i];
    for (size_t i = 0; i < hm.size(); ++i) hp[i] -= 2.0 * k * hm[i];
    hm = std::move(h);
    h = std::move(hp);
  }
  return {n, h};
}

PolyCoefficients laguerre_coefficients(int n) {
  if (n < 0) throw std::domain_error("laguerre_coefficients: n must be >= 0");
  // L_n(x) = sum_k C(n,k) (-x)^k / k!
  std::vector<double> c(n + 1);
  double binom = 1.0, kfac = 1.0, sign = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom *= double(n - k + 1) / k;
      kfac *= k;
      sign = -sign;
    }
    c[k] = sign * binom / kfac;
  }
  return {n, c};
}

double evaluate(const PolyCoefficients& p, double x) {
  double acc = 0.0;
  for (int i = p.degree; i >= 0; --i) acc = acc * x + p.coefficients[i];
  return acc;
}

namespace {

long double laguerre_ext(int n, long double x) {
  if (n == 0) return 1.0L;
  long double lm = 1.0L, l = 1.0L - x;
  for (int k = 1; k < n; ++k) {
    long double lp = ((2.0L * k + 1.0L - x) * l - k * lm) / (k + 1.0L);
    lm = l;
    l = lp;
  }
  return l;
}

}  // namespace

Eigen::ArrayXd laguerre_roots(int n) {
  if (n < 1) throw std::domain_error("laguerre_roots: n must be >= 1");
  // Jacobi matrix of the Laguerre weight: diag 2k+1, offdiag k.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = 2.0 * k + 1.0;
    if (k + 1 < n) {
      J(k, k + 1) = k + 1.0;
      J(k + 1, k) = k + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  Eigen::ArrayXd roots = es.eigenvalues().array();

  // Newton polish in extended precision; L_n'(x) = n (L_n(x) - L_{n-1}(x)) / x.
  // Between roots L_n grows like e^{x/2}, so for large n the absolute residual
  // floor is set by the conditioning of the root, not by the iteration: accept
  // when the Newton step falls below a few ulps of the root.
  for (int i = 0; i < n; ++i) {
    long double r = roots[i];
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      long double f = laguerre_ext(n, r);
      if (std::abs(double(f)) < 1e-12) {
        ok = true;
        break;
      }
      long double fp = n * (f - laguerre_ext(n - 1, r)) / r;
      long double step = f / fp;
      r -= step;
      if (!std::isfinite(double(r))) break;
      if (std::abs(double(step)) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(double(r))) {
        ok = true;
        break;
      }
    }
    if (!ok)
      throw std::runtime_error("laguerre_roots: polishing did not converge at n=" +
                               std::to_string(n));
    roots[i] = double(r);
  }
  std::sort(roots.data(), roots.data() + n);
  return roots;
}

namespace {

double ei_series(double x) {
  // Ei(x) = gamma + log|x| + sum_k x^k/(k k!)
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= x / k;
    double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return kEulerMascheroni + std::log(std::abs(x)) + sum;
}

double ei_asymptotic(double x) {
  // Ei(x) ~ e^x/x (1 + 1!/x + 2!/x^2 + ...), truncated at the smallest term.
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < 400; ++k) {
    double next = term * k / x;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::exp(x) / x * sum;
}

double e1_continued_fraction(double y) {
  // E1(y) = e^{-y} / (y + 1 - 1/(y + 3 - 4/(y + 5 - 9/(...)))), y > 0.
  // Modified Lentz.
  const double tiny = 1e-300;
  double b = y + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double f = d;
  for (int k = 1; k < 400; ++k) {
    double a = -double(k) * double(k);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-y) * f;
}

}  // namespace

double exp_integral_ei(double x) {
  if (x == 0.0) throw std::domain_error("exp_integral_ei: x = 0");
  if (x > 40.0) return ei_asymptotic(x);
  if (x >= -1.0) return ei_series(x);
  // x < -1: Ei(x) = -E1(-x); the series cancels catastrophically here.
  return -e1_continued_fraction(-x);
}

double incomplete_gamma_upper(int k, double x) {
  if (k < 1) throw std::domain_error("incomplete_gamma_upper: k must be >= 1");
  // Gamma(k,x) = (k-1)! e^{-x} sum_{s=0}^{k-1} x^s/s!
  double term = std::exp(-x);  // s = 0
  double sum = term;
  for (int s = 1; s < k; ++s) {
    term *= x / s;
    sum += term;
  }
  double fac = 1.0;
  for (int s = 2; s < k; ++s) fac *= s;
  return fac * sum;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
  return std::lgamma(x);
}

}  // namespace cwig::specfun
