#include "cwig/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace cwig::quad {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

// Visit the trapezoid nodes of one refinement level. The map callback fills
// abscissa and weight for a given u and returns false once the node has
// collapsed onto an endpoint (or under/overflowed), which ends the scan in
// that direction. Returns h * (weighted sample sum).
template <typename Map>
double scan_level(const Fn& f, const Map& map, double h, bool odd_only, long& evals,
                  long max_evals, double scale_hint) {
  double sum = 0.0;
  if (!odd_only) {
    double x, w;
    if (map(0.0, x, w) && evals < max_evals) {
      double fx = f(x);
      ++evals;
      if (std::isfinite(fx)) sum += w * fx;
    }
  }
  const int step = odd_only ? 2 : 1;
  for (int dir : {+1, -1}) {
    int consecutive_small = 0;
    for (int k = 1; k < 2000000; k += step) {
      double u = dir * k * h;
      double x, w;
      if (!map(u, x, w)) break;
      if (evals >= max_evals) return h * sum;
      double fx = f(x);
      ++evals;
      if (!std::isfinite(fx)) continue;  // integrable endpoint singularity
      double contrib = w * fx;
      sum += contrib;
      double ref = std::max(std::abs(sum), scale_hint);
      // truncate only once the nodes are in the double-exponential tail;
      // small contributions in the bulk (|u| < 1.5) may just be a local
      // dead zone of the integrand
      if (std::abs(contrib) < 1e-18 * ref + 1e-300 && std::abs(u) >= 1.5) {
        if (++consecutive_small >= 3) break;
      } else {
        consecutive_small = 0;
      }
    }
  }
  return h * sum;
}

template <typename Map>
Result de_engine(const Fn& f, const Map& map, const Config& cfg) {
  Result res;
  const int max_level = std::clamp(cfg.max_level, 3, 15);
  double h = 1.0;
  long evals = 0;
  double integral = scan_level(f, map, h, false, evals, cfg.max_evals, 0.0);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double odd = scan_level(f, map, h, true, evals, cfg.max_evals, std::abs(integral) / h);
    double prev = integral;
    integral = 0.5 * integral + odd;
    res.value = integral;
    res.evaluations = evals;
    res.error_estimate = std::abs(integral - prev);
    double goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(integral));
    if (level >= 2 && res.error_estimate <= goal) {
      res.converged = true;
      return res;
    }
    if (evals >= cfg.max_evals) break;
  }
  res.converged = false;
  return res;
}

}  // namespace

Result tanhsinh_finite(const Fn& f, double a, double b, const Config& cfg) {
  Result res;
  if (!(a < b)) {
    res.error_estimate = 0.0;
    res.converged = true;
    return res;
  }
  const double s = 0.5 * (b - a);
  auto map = [a, b, s](double u, double& x, double& w) -> bool {
    double t = kHalfPi * std::sinh(u);
    // distance to the nearer endpoint: s*(1 - tanh|t|) = 2s/(1+e^{2|t|})
    double off = 2.0 * s / (1.0 + std::exp(2.0 * std::abs(t)));
    if (off <= 0.0) return false;
    x = (u >= 0.0) ? b - off : a + off;
    if (x <= a || x >= b) return false;  // collapsed in floating point
    double ch = std::cosh(t);
    w = s * kHalfPi * std::cosh(u) / (ch * ch);
    return std::isfinite(w);
  };
  return de_engine(f, map, cfg);
}

Result integrate_semi_infinite(const Fn& f, double a, const Config& cfg) {
  // x = a + exp((pi/2) sinh u): exp-type change of variable, then the same
  // double-exponential trapezoid refinement as the finite rule.
  auto map = [a](double u, double& x, double& w) -> bool {
    double t = kHalfPi * std::sinh(u);
    if (t > 700.0) return false;  // overflow guard; f must have decayed by then
    double e = std::exp(t);
    x = a + e;
    if (x <= a) return false;  // underflowed onto the endpoint
    w = kHalfPi * std::cosh(u) * e;
    return std::isfinite(w) && std::isfinite(x);
  };
  return de_engine(f, map, cfg);
}

Result integrate_real_line(const Fn& f, const Config& cfg) {
  Config half = cfg;
  half.abs_tol = 0.5 * cfg.abs_tol;
  Result pos = integrate_semi_infinite(f, 0.0, half);
  Result neg = integrate_semi_infinite([&f](double x) { return f(-x); }, 0.0, half);
  Result res;
  res.value = pos.value + neg.value;
  res.error_estimate = pos.error_estimate + neg.error_estimate;
  res.evaluations = pos.evaluations + neg.evaluations;
  res.converged = pos.converged && neg.converged;
  return res;
}

Result integrate_1d(const Fn& f, Domain d, const Config& cfg) {
  bool lo_inf = std::isinf(d.lo), hi_inf = std::isinf(d.hi);
  if (!lo_inf && !hi_inf) return tanhsinh_finite(f, d.lo, d.hi, cfg);
  if (!lo_inf && hi_inf) return integrate_semi_infinite(f, d.lo, cfg);
  if (lo_inf && !hi_inf)
    return integrate_semi_infinite([&f, d](double u) { return f(d.hi - u); }, 0.0, cfg);
  return integrate_real_line(f, cfg);
}

Result integrate_1d_split(const Fn& f, Domain d, std::vector<double> breakpoints,
                          const Config& cfg) {
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> pts;
  for (double b : breakpoints)
    if (b > d.lo && b < d.hi && (pts.empty() || b > pts.back())) pts.push_back(b);
  if (pts.empty()) return integrate_1d(f, d, cfg);

  Config panel_cfg = cfg;
  panel_cfg.abs_tol = cfg.abs_tol / double(pts.size() + 1);
  panel_cfg.rel_tol = 0.25 * cfg.rel_tol;

  Result total;
  total.error_estimate = 0.0;
  total.converged = true;
  double lo = d.lo;
  for (size_t i = 0; i <= pts.size(); ++i) {
    double hi = (i < pts.size()) ? pts[i] : d.hi;
    panel_cfg.max_evals = cfg.max_evals - total.evaluations;
    if (panel_cfg.max_evals <= 0) {
      total.converged = false;
      break;
    }
    Result r = integrate_1d(f, {lo, hi}, panel_cfg);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
    lo = hi;
  }
  return total;
}

namespace {

Result integrate_2d_impl(const Fn2& f, Domain x_dom, Domain p_dom, const Config& cfg,
                         const std::vector<double>* x_breaks,
                         const std::function<std::vector<double>(double)>* p_breaks) {
  Config inner_cfg = cfg;
  inner_cfg.abs_tol = 0.1 * cfg.abs_tol;
  inner_cfg.rel_tol = 0.1 * cfg.rel_tol;
  Config outer_cfg = inner_cfg;

  long inner_evals = 0;
  bool inner_ok = true;
  double max_inner_err = 0.0;

  Fn outer = [&](double x) {
    Fn slice = [&f, x](double p) { return f(x, p); };
    Result r = (p_breaks && *p_breaks)
                   ? integrate_1d_split(slice, p_dom, (*p_breaks)(x), inner_cfg)
                   : integrate_1d(slice, p_dom, inner_cfg);
    inner_evals += r.evaluations;
    inner_ok = inner_ok && r.converged;
    max_inner_err = std::max(max_inner_err, r.error_estimate);
    return r.value;
  };

  Result out = (x_breaks && !x_breaks->empty())
                   ? integrate_1d_split(outer, x_dom, *x_breaks, outer_cfg)
                   : integrate_1d(outer, x_dom, outer_cfg);

  Result res;
  res.value = out.value;
  res.evaluations = inner_evals;
  res.error_estimate = out.error_estimate + max_inner_err;
  double goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
  res.converged = out.converged && inner_ok && res.error_estimate <= goal;
  return res;
}

}  // namespace

Result integrate_2d(const Fn2& f, Domain x_dom, Domain p_dom, const Config& cfg) {
  return integrate_2d_impl(f, x_dom, p_dom, cfg, nullptr, nullptr);
}

Result integrate_2d(const Fn2& f, Domain x_dom, Domain p_dom, const Config& cfg,
                    const std::vector<double>& x_breaks,
                    const std::function<std::vector<double>(double)>& p_breaks) {
  return integrate_2d_impl(f, x_dom, p_dom, cfg, &x_breaks, &p_breaks);
}

Result oscillatory_semi_infinite(const Fn& f, double a, double half_period,
                                 double smooth_width, const Config& cfg) {
  if (!(half_period > 0.0) || std::isinf(half_period))
    return integrate_semi_infinite(f, a, cfg);

  const int kTail = 48;
  long n_direct = std::clamp(long(std::ceil(smooth_width / half_period)), 1L, 20000L);
  Config panel_cfg = cfg;
  panel_cfg.abs_tol = cfg.abs_tol / double(n_direct + kTail);
  panel_cfg.rel_tol = std::min(cfg.rel_tol, 1e-3);

  Result total;
  total.error_estimate = 0.0;
  total.converged = true;
  double lo = a;
  for (long k = 0; k < n_direct; ++k) {
    double hi = a + double(k + 1) * half_period;
    Result r = tanhsinh_finite(f, lo, hi, panel_cfg);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
    lo = hi;
  }

  // alternating tail: partial sums of half-period panels, iterated averaging
  std::vector<double> partial;
  partial.reserve(kTail);
  double running = total.value;
  double last_panel = 0.0;
  for (int k = 0; k < kTail; ++k) {
    double hi = lo + half_period;
    Result r = tanhsinh_finite(f, lo, hi, panel_cfg);
    running += r.value;
    last_panel = std::abs(r.value);
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
    partial.push_back(running);
    lo = hi;
    if (last_panel < 1e-18 * (std::abs(running) + 1e-300) && k >= 3) break;
  }
  double before_last = partial[0];
  while (partial.size() > 1) {
    before_last = partial[0];
    for (size_t i = 0; i + 1 < partial.size(); ++i)
      partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  double accel = partial[0];
  total.error_estimate += std::abs(accel - before_last);
  total.value = accel;
  double goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value));
  total.converged = total.converged && total.error_estimate <= goal;
  return total;
}

std::vector<double> find_sign_changes(const Fn& f, double a, double b, double step) {
  std::vector<double> zeros;
  if (!(step > 0.0) || !(b > a)) return zeros;
  double x0 = a, f0 = f(a);
  while (x0 < b) {
    double x1 = std::min(x0 + step, b);
    double f1 = f(x1);
    if (f0 == 0.0) {
      zeros.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
        if (hi - lo <= 1e-15 * (1.0 + std::abs(mid))) break;
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
    if (x1 >= b) break;
  }
  return zeros;
}

}  // namespace cwig::quad
