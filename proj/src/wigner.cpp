#include "cwig/wigner.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cwig/specfun.hpp"

namespace cwig::wigner {

namespace {

double binom_exact(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Ads2WignerEngine::Ads2WignerEngine(int j, double radius, geom::Units units)
    : j_(j), radius_(radius), units_(units) {
  if (j < 1) throw std::domain_error("Ads2WignerEngine: j must be a positive integer");
  if (j > 12) throw std::domain_error("Ads2WignerEngine: exact coefficient tables end at j = 12");
  if (!(radius > 0.0)) throw std::domain_error("Ads2WignerEngine: R must be > 0");

  norm_ = std::exp(specfun::log_gamma(2.0 * j) - specfun::log_gamma(2.0 * j - 0.5)) /
          (std::sqrt(specfun::kPi) * radius);
  double scale = norm_ * std::pow(radius, 2.0 * j) * std::pow(4.0 * radius, 2.0 * j);
  amp_ = 4.0 * specfun::kPi * scale;
  series_amp_ = 2.0 * specfun::kPi * scale;
  x_switch_ = 0.45 * radius;

  // direct branch: the triple sum of the contour evaluation, grouped by
  // l3 (the power of t) with exact binomial products
  for (int l3 = 0; l3 <= j - 1; ++l3)
    for (int l2 = 0; l2 <= l3; ++l2)
      for (int l1 = l2; l1 <= l3; ++l1) {
        double b = binom_exact(j + l3 - l1 - 1, j - 1) * binom_exact(j + l2 - 1, j - 1) *
                   binom_exact(j + l1 - l2 - 1, j - 1);
        double coeff = b / (factorial(j - 1 - l3) * std::pow(4.0, 3.0 * j + l3));
        direct_.push_back({l1, l2, l3, coeff});
      }

  // series branch around x = 0: with s = 2(x + iR) the denominator pairs
  // combine into [(z -+ 2iR)^2 - 4x^2]^j, expanded in powers of 4x^2; each
  // term is a single-pole residue free of the x -> 0 cancellation.
  const double R = radius;
  for (int total = 0; total <= series_max_total_; ++total) {
    for (int m = 0; m <= total; ++m) {
      int mp = total - m;
      int P = 2 * j + 2 * m, Q = 2 * j + 2 * mp;
      double bmbmp = binom_exact(j + m - 1, m) * binom_exact(j + mp - 1, mp);
      // c0 = (P)_{Q-1} (4R)^{-(P+Q-1)} / (Q-1)!
      double log_c0 = specfun::log_gamma(double(P + Q - 1)) - specfun::log_gamma(double(P)) -
                      specfun::log_gamma(double(Q)) - (P + Q - 1.0) * std::log(4.0 * R);
      double c = std::exp(log_c0);
      if (!std::isfinite(c))
        throw std::runtime_error("Ads2WignerEngine: series coefficients overflow");
      SeriesTerm st;
      st.total = total;
      st.tpoly = Eigen::ArrayXd::Zero(Q);
      double front = series_amp_ * bmbmp * std::pow(-4.0, total);
      for (int l = 0; l < Q; ++l) {
        st.tpoly[l] = front * c;
        // ratio from l to l+1: (Q-1-l) (4R) / ((l+1)(P+Q-2-l))
        c *= (Q - 1.0 - l) * 4.0 * R / ((l + 1.0) * (P + Q - 2.0 - l));
      }
      series_.push_back(std::move(st));
    }
  }
}

Ads2WignerEngine::Slice Ads2WignerEngine::slice(double x) const {
  Slice s;
  double X = std::abs(x);
  s.x = X;
  const double R = radius_;
  if (X < x_switch_) {
    s.series = true;
    int maxdeg = 2 * j_ + 2 * series_max_total_;
    s.e = Eigen::ArrayXd::Zero(maxdeg);
    double X2 = X * X;
    for (const auto& st : series_) {
      double xw = std::pow(X2, st.total);
      for (int l = 0; l < st.tpoly.size(); ++l) s.e[l] += xw * st.tpoly[l];
    }
  } else {
    s.series = false;
    s.q = Eigen::ArrayXcd::Zero(j_);
    const std::complex<double> i_unit(0.0, 1.0);
    std::complex<double> xiR(X, R);
    for (const auto& dt : direct_) {
      int s_pow = j_ - 1 - dt.l3;
      std::complex<double> ph = std::pow(i_unit, dt.l1);
      std::complex<double> den =
          std::pow(X, double(j_ + dt.l2)) * std::pow(xiR, double(j_ + dt.l1 - dt.l2));
      s.q[s_pow] += amp_ * dt.coeff * std::pow(R, double(dt.l1 - j_ - dt.l3)) * ph / den;
    }
  }
  return s;
}

double Ads2WignerEngine::eval_slice(const Slice& s, double t) const {
  double envelope = std::exp(-2.0 * t * radius_);
  if (envelope == 0.0) return 0.0;
  if (s.series) {
    double acc = 0.0;
    for (int l = int(s.e.size()) - 1; l >= 0; --l) acc = acc * t + s.e[l];
    return envelope * acc;
  }
  std::complex<double> acc(0.0, 0.0);
  for (int l = int(s.q.size()) - 1; l >= 0; --l) acc = acc * t + s.q[l];
  double th = 2.0 * t * s.x;
  return envelope * (std::cos(th) * acc.real() - std::sin(th) * acc.imag());
}

double Ads2WignerEngine::slice_mass_bound(const Slice& s) const {
  double bound = 0.0, fac = 1.0;
  double inv2R = 1.0 / (2.0 * radius_);
  if (s.series) {
    for (int l = 0; l < s.e.size(); ++l) {
      bound += std::abs(s.e[l]) * fac * std::pow(inv2R, l + 1.0);
      fac *= (l + 1.0);
    }
  } else {
    for (int l = 0; l < s.q.size(); ++l) {
      bound += std::abs(s.q[l]) * fac * std::pow(inv2R, l + 1.0);
      fac *= (l + 1.0);
    }
  }
  return bound;
}

double Ads2WignerEngine::operator()(double x, double p) const {
  return eval_slice(slice(x), std::abs(p) / units_.hbar);
}

WignerFunction wigner_numeric(const states::LambdaWavefunction& psi, const quad::Config& cfg) {
  quad::Config point_cfg = cfg;
  point_cfg.abs_tol = std::min(cfg.abs_tol * 1e-2, 1e-10);
  point_cfg.rel_tol = std::min(cfg.rel_tol, 1e-10);
  double hbar = psi.units.hbar;
  double w = psi.width_hint;
  auto f = psi;  // value copy; evaluators must outlive the caller's state

  WignerFunction out;
  out.kind = Kind::numeric;
  out.source_label = psi.label;
  out.units = psi.units;
  out.params["quad_abs_tol"] = point_cfg.abs_tol;
  out.x_width_hint = w;
  out.p_width_hint = 8.0 * hbar / w;
  out.eval = [f, hbar, w, point_cfg](double x, double p) {
    double t = std::abs(p) / hbar;
    auto corr = [&f, x](double y) { return f(x - 0.5 * y) * f(x + 0.5 * y); };
    double hp = (t == 0.0) ? quad::kInf : specfun::kPi / t;
    double smooth = 2.0 * std::abs(x) + 8.0 * w;
    auto r = quad::oscillatory_semi_infinite(
        [&corr, t](double y) { return corr(y) * std::cos(t * y); }, 0.0, hp, smooth,
        point_cfg);
    return 2.0 * r.value;
  };
  out.p_half_period = [hbar, w](double x) {
    return specfun::kPi * hbar / (2.0 * (std::abs(x) + w));
  };
  out.x_half_period = [hbar](double p) {
    return (p == 0.0) ? quad::kInf : specfun::kPi * hbar / (2.0 * std::abs(p));
  };
  return out;
}

WignerFunction wigner_flat_closed(const states::OscillatorFlatParams& params,
                                  const geom::Units& units) {
  if (params.n < 0) throw std::domain_error("wigner_flat_closed: n must be >= 0");
  double a = params.alpha(units);
  double hbar = units.hbar;
  int n = params.n;
  double sign = (n % 2 == 0) ? 2.0 : -2.0;

  WignerFunction out;
  out.kind = Kind::flat_closed;
  out.source_label = "flat_oscillator(n=" + std::to_string(n) + ")";
  out.units = units;
  out.params["n"] = n;
  out.params["alpha"] = a;
  out.eval = [a, hbar, n, sign](double x, double p) {
    double u = a * x * x + p * p / (hbar * hbar * a);
    return sign * specfun::laguerre(n, 2.0 * u) * std::exp(-u);
  };
  out.x_width_hint = std::sqrt((2.0 * n + 1.0) / a) + 2.0 / std::sqrt(a);
  out.p_width_hint = hbar * std::sqrt(a) * (std::sqrt(2.0 * n + 1.0) + 2.0);
  return out;
}

WignerFunction wigner_ads2_j1(double radius, const geom::Units& units) {
  if (!(radius > 0.0)) throw std::domain_error("wigner_ads2_j1: R must be > 0");
  double R = radius;
  double hbar = units.hbar;
  double eps = 1e-4 * R;

  WignerFunction out;
  out.kind = Kind::ads2_j1;
  out.source_label = "ads2_ground(j=1)";
  out.units = units;
  out.params["j"] = 1;
  out.params["R"] = R;
  out.eval = [R, hbar, eps](double x, double p) {
    double t = std::abs(p) / hbar;  // |p|/hbar
    double th = 2.0 * t * x;
    double sinc_term;
    if (std::abs(x) < eps) {
      // (R/x) sin(2|p|x/hbar) by 4-term Taylor to avoid the 0/0
      double th2 = th * th;
      sinc_term = 2.0 * t * R * (1.0 - th2 / 6.0 * (1.0 - th2 / 20.0 * (1.0 - th2 / 42.0)));
    } else {
      sinc_term = R / x * std::sin(th);
    }
    return 2.0 * R * R * std::exp(-2.0 * t * R) / (R * R + x * x) *
           (std::cos(th) + sinc_term);
  };
  out.p_half_period = [hbar](double x) {
    return (x == 0.0) ? quad::kInf : specfun::kPi * hbar / (2.0 * std::abs(x));
  };
  out.x_half_period = [hbar](double p) {
    return (p == 0.0) ? quad::kInf : specfun::kPi * hbar / (2.0 * std::abs(p));
  };
  out.p_decay_rate = 2.0 * R / hbar;
  out.x_width_hint = 3.0 * R;
  out.p_width_hint = 3.0 * hbar / R;
  return out;
}

WignerFunction wigner_ads2_residue(int j, double radius, const geom::Units& units) {
  auto engine = std::make_shared<Ads2WignerEngine>(j, radius, units);
  double hbar = units.hbar;

  WignerFunction out;
  out.kind = Kind::ads2_residue;
  out.source_label = "ads2_ground(j=" + std::to_string(j) + ")";
  out.units = units;
  out.params["j"] = j;
  out.params["R"] = radius;
  out.eval = [engine](double x, double p) { return (*engine)(x, p); };
  out.p_half_period = [hbar](double x) {
    return (x == 0.0) ? quad::kInf : specfun::kPi * hbar / (2.0 * std::abs(x));
  };
  out.x_half_period = [hbar](double p) {
    return (p == 0.0) ? quad::kInf : specfun::kPi * hbar / (2.0 * std::abs(p));
  };
  out.p_decay_rate = 2.0 * radius / hbar;
  out.x_width_hint = radius * (1.0 + 2.0 / j);
  out.p_width_hint = (2.0 * j + 1.0) * hbar / radius;
  return out;
}

WignerFunction wigner_mixed(const std::vector<std::pair<double, WignerFunction>>& components) {
  if (components.empty()) throw std::invalid_argument("wigner_mixed: no components");
  double sum = 0.0;
  for (const auto& [w, wf] : components) {
    if (w < 0.0 || w > 1.0)
      throw std::invalid_argument("wigner_mixed: weights must lie in [0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("wigner_mixed: weights must sum to 1");

  WignerFunction out;
  out.kind = Kind::mixed;
  out.source_label = "mixed(" + std::to_string(components.size()) + ")";
  out.units = components.front().second.units;
  out.params["components"] = double(components.size());
  out.components =
      std::make_shared<const std::vector<std::pair<double, WignerFunction>>>(components);
  const auto& comps = *out.components;
  auto held = out.components;
  out.eval = [held](double x, double p) {
    double acc = 0.0;
    for (const auto& [w, wf] : *held) acc += w * wf.eval(x, p);
    return acc;
  };
  // conservative hints: tightest oscillation, slowest exponential envelope
  std::vector<std::function<double(double)>> php, xhp;
  double decay = quad::kInf;
  bool any_decay = true;
  for (const auto& [w, wf] : comps) {
    if (wf.p_half_period) php.push_back(wf.p_half_period);
    if (wf.x_half_period) xhp.push_back(wf.x_half_period);
    if (wf.p_decay_rate > 0.0)
      decay = std::min(decay, wf.p_decay_rate);
    else
      any_decay = false;
  }
  if (!php.empty())
    out.p_half_period = [php](double x) {
      double m = quad::kInf;
      for (const auto& f : php) m = std::min(m, f(x));
      return m;
    };
  if (!xhp.empty())
    out.x_half_period = [xhp](double p) {
      double m = quad::kInf;
      for (const auto& f : xhp) m = std::min(m, f(p));
      return m;
    };
  out.p_decay_rate = (any_decay && std::isfinite(decay)) ? decay : 0.0;
  for (const auto& [w, wf] : comps) {
    out.x_width_hint = std::max(out.x_width_hint, wf.x_width_hint);
    out.p_width_hint = std::max(out.p_width_hint, wf.p_width_hint);
  }
  return out;
}

namespace {

// (1/h) int_0^inf rho(fixed, s) ds for an axis with the given oscillation
// half-period hint and decay scale.
double half_axis_integral(const std::function<double(double)>& f, double half_period,
                          double smooth, const quad::Config& cfg) {
  return quad::oscillatory_semi_infinite(f, 0.0, half_period, smooth, cfg).value;
}

}  // namespace

std::function<double(double)> marginal_position(const WignerFunction& w,
                                                const quad::Config& cfg) {
  auto wf = w;  // value copy keeps the closure self-contained
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-9);
  c.rel_tol = std::min(cfg.rel_tol, 1e-9);
  return [wf, c](double x) {
    double h = wf.units.h();
    double hp = wf.p_half_period ? wf.p_half_period(x) : quad::kInf;
    double smooth = (wf.p_decay_rate > 0.0)
                        ? std::log(1.0 / c.abs_tol) / wf.p_decay_rate
                        : 6.0 * wf.p_width_hint;
    // even in p for the real states built here
    double v = half_axis_integral([&wf, x](double p) { return wf.eval(x, p); }, hp, smooth, c);
    return 2.0 * v / h;
  };
}

std::function<double(double)> marginal_momentum(const WignerFunction& w,
                                                const quad::Config& cfg) {
  auto wf = w;
  quad::Config c = cfg;
  c.abs_tol = 0.5 * std::min(cfg.abs_tol, 1e-9);
  c.rel_tol = std::min(cfg.rel_tol, 1e-9);
  return [wf, c](double p) {
    double h = wf.units.h();
    double hp = wf.x_half_period ? wf.x_half_period(p) : quad::kInf;
    double smooth = 6.0 * wf.x_width_hint;
    double pos = half_axis_integral([&wf, p](double x) { return wf.eval(x, p); }, hp, smooth, c);
    double neg =
        half_axis_integral([&wf, p](double x) { return wf.eval(-x, p); }, hp, smooth, c);
    return (pos + neg) / h;
  };
}

double WignerGridCache::operator()(double x, double p) const {
  auto locate = [](const Eigen::ArrayXd& nodes, double v, Eigen::Index& i, double& frac) {
    const Eigen::Index n = nodes.size();
    if (v <= nodes[0]) {
      i = 0;
      frac = 0.0;
      return;
    }
    if (v >= nodes[n - 1]) {
      i = n - 2;
      frac = 1.0;
      return;
    }
    Eigen::Index lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      Eigen::Index mid = (lo + hi) / 2;
      (nodes[mid] > v ? hi : lo) = mid;
    }
    i = lo;
    frac = (v - nodes[lo]) / (nodes[lo + 1] - nodes[lo]);
  };
  Eigen::Index i, k;
  double fx, fp;
  locate(x_nodes, x, i, fx);
  locate(p_nodes, p, k, fp);
  return (1.0 - fx) * ((1.0 - fp) * values(i, k) + fp * values(i, k + 1)) +
         fx * ((1.0 - fp) * values(i + 1, k) + fp * values(i + 1, k + 1));
}

WignerGridCache make_grid_cache(const WignerFunction& w, double x_min, double x_max, int nx,
                                double p_min, double p_max, int np) {
  if (nx < 2 || np < 2) throw std::invalid_argument("make_grid_cache: need at least 2x2 nodes");
  WignerGridCache cache;
  cache.x_nodes = Eigen::ArrayXd::LinSpaced(nx, x_min, x_max);
  cache.p_nodes = Eigen::ArrayXd::LinSpaced(np, p_min, p_max);
  cache.values.resize(nx, np);
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < np; ++k) cache.values(i, k) = w.eval(cache.x_nodes[i], cache.p_nodes[k]);
  return cache;
}

}  // namespace cwig::wigner
