#pragma once

#include <functional>
#include <map>
#include <string>

namespace cwig::geom {

/// Dimensionful inputs. All entropies must come out independent of these;
/// the defaults give the nondimensionalized setup hbar = l_P = 1, h = 2 pi.
struct Units {
  double hbar = 1.0;
  double planck_length = 1.0;
  double h() const { return 6.28318530717958647692 * hbar; }
};

/// 1D spatial metric component g(x) > 0 on a global chart.
struct Metric1D {
  std::function<double(double)> g;
  std::string name;
  std::map<std::string, double> params;

  double operator()(double x) const { return g(x); }
  double volume_element(double x) const;  // sqrt(g)
};

/// Orientation-preserving chart map x = f(y) with analytic derivative
/// f'(y) > 0. The derivative is carried explicitly so reparametrization
/// tests are not polluted by numerical differentiation.
struct Diffeomorphism {
  std::function<double(double)> forward;
  std::function<double(double)> derivative;
  std::string label;
};

/// Flat metric, g == 1.
Metric1D flat_metric();

/// Constant-time slice of AdS2: g(x) = R^2 / (R^2 + x^2).
/// Throws std::domain_error for R <= 0.
Metric1D ads2_metric(double R);

/// The lambda-wavefunction rescaling factor g(x)^{1/4}.
double lambda_factor(const Metric1D& m, double x);

/// Pulled-back metric g'(y) = g(f(y)) f'(y)^2.
Metric1D pull_back_metric(const Metric1D& m, const Diffeomorphism& d);

Diffeomorphism identity_diffeomorphism();
Diffeomorphism scaling_diffeomorphism(double c);  // x = c y, c > 0
Diffeomorphism sinh_diffeomorphism();             // x = sinh(y)

/// d1 after d2: x = f1(f2(z)).
Diffeomorphism compose(const Diffeomorphism& d1, const Diffeomorphism& d2);

}  // namespace cwig::geom
