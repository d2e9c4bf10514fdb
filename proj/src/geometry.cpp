#include "cwig/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace cwig::geom {

double Metric1D::volume_element(double x) const { return std::sqrt(g(x)); }

Metric1D flat_metric() {
  Metric1D m;
  m.g = [](double) { return 1.0; };
  m.name = "flat";
  return m;
}

Metric1D ads2_metric(double R) {
  if (!(R > 0.0)) throw std::domain_error("ads2_metric: R must be > 0");
  Metric1D m;
  m.g = [R](double x) { return R * R / (R * R + x * x); };
  m.name = "ads2";
  m.params["R"] = R;
  return m;
}

double lambda_factor(const Metric1D& m, double x) { return std::pow(m.g(x), 0.25); }

Metric1D pull_back_metric(const Metric1D& m, const Diffeomorphism& d) {
  Metric1D out;
  auto g = m.g;
  auto f = d.forward;
  auto fp = d.derivative;
  out.g = [g, f, fp](double y) {
    double j = fp(y);
    return g(f(y)) * j * j;
  };
  out.name = m.name + "|" + d.label;
  out.params = m.params;
  return out;
}

Diffeomorphism identity_diffeomorphism() {
  return {[](double y) { return y; }, [](double) { return 1.0; }, "identity"};
}

Diffeomorphism scaling_diffeomorphism(double c) {
  if (!(c > 0.0)) throw std::domain_error("scaling_diffeomorphism: c must be > 0");
  return {[c](double y) { return c * y; }, [c](double) { return c; },
          "scale(" + std::to_string(c) + ")"};
}

Diffeomorphism sinh_diffeomorphism() {
  return {[](double y) { return std::sinh(y); }, [](double y) { return std::cosh(y); },
          "sinh"};
}

Diffeomorphism compose(const Diffeomorphism& d1, const Diffeomorphism& d2) {
  auto f1 = d1.forward, f2 = d2.forward;
  auto p1 = d1.derivative, p2 = d2.derivative;
  return {[f1, f2](double z) { return f1(f2(z)); },
          [f1, f2, p1, p2](double z) { return p1(f2(z)) * p2(z); },
          d1.label + "." + d2.label};
}

}  // namespace cwig::geom
