#include "cwig/states.hpp"

#include <cmath>
#include <stdexcept>

#include "cwig/specfun.hpp"

namespace cwig::states {

namespace {

// Normalized Hermite function H_n(xi) e^{-xi^2/2} / sqrt(2^n n!), via the
// normalized recurrence (no overflow up to large n).
double hermite_function(int n, double xi) {
  double w = std::exp(-0.5 * xi * xi);
  if (n == 0) return w;
  double fm = w, f = std::sqrt(2.0) * xi * w;
  for (int k = 1; k < n; ++k) {
    double fp = xi * std::sqrt(2.0 / (k + 1.0)) * f - std::sqrt(k / (k + 1.0)) * fm;
    fm = f;
    f = fp;
  }
  return f;
}

double check_normalization(const LambdaWavefunction& psi, const quad::Config& cfg) {
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-9);
  c.rel_tol = std::min(cfg.rel_tol, 1e-9);
  auto r = quad::integrate_real_line([&psi](double x) { return psi.density(x); }, c);
  if (std::abs(r.value - 1.0) > 1e-8)
    throw std::runtime_error("lambda-wavefunction '" + psi.label +
                             "' is not Lebesgue-normalized: norm = " +
                             std::to_string(r.value));
  return r.value;
}

}  // namespace

double OscillatorFlatParams::alpha(const geom::Units& u) const {
  return std::sqrt(coupling * mass) / u.hbar;
}

double OscillatorFlatParams::energy(const geom::Units& u) const {
  return u.hbar * std::sqrt(coupling / mass) * (n + 0.5);
}

double OscillatorAdS2GroundParams::normalization() const {
  double li = lambda_inverse();
  return std::exp(specfun::log_gamma(li + 0.5) - specfun::log_gamma(li)) /
         (std::sqrt(specfun::kPi) * radius);
}

double OscillatorAdS2GroundParams::mass_coupling_product(const geom::Units& u) const {
  double R2 = radius * radius;
  return 4.0 * u.hbar * u.hbar / (R2 * R2) * (j + 0.25) * (j - 0.25);
}

double OscillatorAdS2GroundParams::ground_energy(const geom::Units& u, double mass) const {
  return u.hbar * u.hbar * lambda_inverse() / (2.0 * mass * radius * radius);
}

double LambdaWavefunction::invariant_density(double x) const {
  return units.planck_length * density(x) / metric.volume_element(x);
}

std::complex<double> MomentumWavefunction::operator()(double p) const {
  double a = std::abs(p);
  if (a >= p_max) return {0.0, 0.0};
  double r = re(a), i = im(a);
  return {r, p < 0.0 ? -i : i};
}

LambdaWavefunction flat_oscillator_state(const OscillatorFlatParams& params,
                                         const geom::Units& units,
                                         const quad::Config& cfg) {
  if (params.n < 0) throw std::domain_error("flat_oscillator_state: n must be >= 0");
  if (!(params.mass > 0.0) || !(params.coupling > 0.0))
    throw std::domain_error("flat_oscillator_state: mass and coupling must be > 0");
  double a = params.alpha(units);
  double sqrt_a = std::sqrt(a);
  double amp = std::pow(a / specfun::kPi, 0.25);
  int n = params.n;

  LambdaWavefunction psi;
  psi.eval = [amp, sqrt_a, n](double x) { return amp * hermite_function(n, sqrt_a * x); };
  psi.metric = geom::flat_metric();
  psi.units = units;
  psi.label = "flat_oscillator(n=" + std::to_string(n) + ")";
  psi.width_hint = std::sqrt((2.0 * n + 1.0) / a) + 1.0 / sqrt_a;
  psi.normalization_check = check_normalization(psi, cfg);
  return psi;
}

LambdaWavefunction ads2_ground_state(const OscillatorAdS2GroundParams& params,
                                     const geom::Units& units, const quad::Config& cfg) {
  if (params.j < 1) throw std::domain_error("ads2_ground_state: j must be a positive integer");
  if (!(params.radius > 0.0)) throw std::domain_error("ads2_ground_state: R must be > 0");
  // exponent of gamma(x) in the lambda-wavefunction: 1/(2 Lambda) + 1/4
  double expo = 0.5 * params.lambda_inverse() + 0.25;
  if (std::abs(expo - params.j) > 1e-14 * params.j)
    throw std::logic_error("ads2_ground_state: exponent 1/(2L)+1/4 != j");
  double amp = std::sqrt(params.normalization());
  geom::Metric1D metric = geom::ads2_metric(params.radius);
  auto g = metric.g;

  LambdaWavefunction psi;
  psi.eval = [amp, g, expo](double x) { return amp * std::pow(g(x), expo); };
  psi.metric = metric;
  psi.units = units;
  psi.label = "ads2_ground(j=" + std::to_string(params.j) + ")";
  psi.width_hint = params.radius * (1.0 + 2.0 / params.j);
  psi.normalization_check = check_normalization(psi, cfg);
  return psi;
}

namespace {

// int_{-inf}^{inf} psi(x) trig(p x / hbar) dx. The trig factor oscillates
// forever while psi may decay only algebraically, so each half-line goes
// through the oscillatory panel integrator.
double fourier_component(const LambdaWavefunction& psi, double p, bool cosine,
                         double smooth_width, const quad::Config& cfg) {
  double hbar = psi.units.hbar;
  quad::Fn pos, neg;
  if (cosine) {
    pos = [&psi, p, hbar](double x) { return psi(x) * std::cos(p * x / hbar); };
    neg = [&psi, p, hbar](double x) { return psi(-x) * std::cos(p * x / hbar); };
  } else {
    pos = [&psi, p, hbar](double x) { return psi(x) * std::sin(p * x / hbar); };
    neg = [&psi, p, hbar](double x) { return -psi(-x) * std::sin(p * x / hbar); };
  }
  quad::Config half = cfg;
  half.abs_tol = 0.5 * cfg.abs_tol;
  double hp = (p == 0.0) ? quad::kInf : specfun::kPi * hbar / std::abs(p);
  return quad::oscillatory_semi_infinite(pos, 0.0, hp, smooth_width, half).value +
         quad::oscillatory_semi_infinite(neg, 0.0, hp, smooth_width, half).value;
}

}  // namespace

MomentumWavefunction momentum_representation(const LambdaWavefunction& psi,
                                             const quad::Config& cfg) {
  double hbar = psi.units.hbar;
  double h = psi.units.h();
  quad::Config fcfg = cfg;
  fcfg.abs_tol = std::min(cfg.abs_tol, 1e-9);
  fcfg.rel_tol = std::min(cfg.rel_tol, 1e-9);

  // direct-integration window: only far enough that the envelope is
  // monotone; the alternating-panel acceleration owns the tail, so pushing
  // the handoff further just multiplies the panel count
  double scale = std::max({std::abs(psi(0.0)), std::abs(psi(0.5 * psi.width_hint)),
                           std::abs(psi(psi.width_hint))});
  double window = psi.width_hint;
  while (window < 50.0 * psi.width_hint &&
         std::abs(psi(window)) + std::abs(psi(-window)) > 1e-3 * scale)
    window *= 1.5;

  bool even = true;
  for (double x : {0.37 * psi.width_hint, 1.13 * psi.width_hint})
    even = even && std::abs(psi(x) - psi(-x)) <= 1e-13 * (std::abs(psi(x)) + 1e-300);

  auto value_at = [&](double p) -> std::complex<double> {
    double c = fourier_component(psi, p, true, window, fcfg);
    double s = even ? 0.0 : fourier_component(psi, p, false, window, fcfg);
    return std::complex<double>(c, -s) / std::sqrt(h);
  };

  // momentum window: grow until the density is negligible
  double p0 = std::abs(value_at(0.0).real());
  double p_scale = hbar / psi.width_hint;
  double p_max = 8.0 * p_scale;
  double peak = std::max(p0, std::abs(value_at(2.0 * p_scale)));
  while (p_max < 2000.0 * p_scale && std::abs(value_at(p_max)) > 1e-9 * peak)
    p_max *= 1.4142135623730951;

  // grid refinement until the spline reproduces held-out midpoints
  int n_nodes = 129;
  Eigen::ArrayXd nodes, vre, vim;
  for (;; n_nodes = 2 * (n_nodes - 1) + 1) {
    nodes = Eigen::ArrayXd::LinSpaced(n_nodes, 0.0, p_max);
    vre.resize(n_nodes);
    vim.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
      auto v = value_at(nodes[i]);
      vre[i] = v.real();
      vim[i] = v.imag();
    }
    CubicSpline sre(nodes, vre), sim(nodes, vim);
    double werr = 0.0;
    for (int i = 1; i <= 7; ++i) {
      double pm = p_max * (i - 0.5) / 7.0;
      auto v = value_at(pm);
      werr = std::max({werr, std::abs(sre(pm) - v.real()), std::abs(sim(pm) - v.imag())});
    }
    if (werr < 0.1 * std::max(cfg.abs_tol, 1e-10) * std::max(1.0, peak) || n_nodes > 4097) {
      MomentumWavefunction out;
      out.re = std::move(sre);
      out.im = std::move(sim);
      out.p_max = p_max;
      out.units = psi.units;
      out.parent_label = psi.label;
      auto nr = quad::tanhsinh_finite([&out](double p) { return out.density(p); }, 0.0,
                                      p_max, fcfg);
      out.normalization_check = 2.0 * nr.value;
      if (std::abs(out.normalization_check - 1.0) > 1e-6)
        throw std::runtime_error("momentum_representation: density norm drifted to " +
                                 std::to_string(out.normalization_check));
      return out;
    }
  }
}

namespace {

// hamiltonian(x, psi_value, psi', psi'') -> (H psi)(x)
using HamiltonianFn = std::function<double(double, double, double, double)>;

double residual_pass(const std::function<double(double)>& f, const HamiltonianFn& hamiltonian,
                     double energy, double x_min, double x_max, int n) {
  double h = (x_max - x_min) / (n - 1);
  std::vector<double> psi(n);
  for (int i = 0; i < n; ++i) psi[i] = f(x_min + i * h);
  double max_r = 0.0, max_e = 0.0;
  for (int i = 2; i < n - 2; ++i) {
    double x = x_min + i * h;
    double d1 = (-psi[i + 2] + 8.0 * psi[i + 1] - 8.0 * psi[i - 1] + psi[i - 2]) / (12.0 * h);
    double d2 = (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] + 16.0 * psi[i - 1] -
                 psi[i - 2]) /
                (12.0 * h * h);
    double r = hamiltonian(x, psi[i], d1, d2) - energy * psi[i];
    max_r = std::max(max_r, std::abs(r));
    max_e = std::max(max_e, std::abs(energy * psi[i]));
  }
  return max_r / max_e;
}

double residual_with_richardson(const std::function<double(double)>& f,
                                const HamiltonianFn& ham, double energy,
                                const ResidualGrid& grid) {
  if (grid.n_points < 9) throw std::domain_error("hamiltonian_residual: grid too small");
  double full = residual_pass(f, ham, energy, grid.x_min, grid.x_max, grid.n_points);
  int n_half = (grid.n_points - 1) / 2 + 1;
  double half = residual_pass(f, ham, energy, grid.x_min, grid.x_max, n_half);
  // 5-point stencils converge ~h^4; no improvement under refinement means the
  // finite-difference error has not reached its floor.
  if (full > half && full > 1e-3)
    throw std::runtime_error("hamiltonian_residual: grid too coarse (no Richardson gain)");
  return full;
}

}  // namespace

double hamiltonian_residual(const LambdaWavefunction& psi, const OscillatorFlatParams& params,
                            const ResidualGrid& grid) {
  double hbar = psi.units.hbar;
  double m = params.mass, kappa = params.coupling;
  double energy = params.energy(psi.units);
  // flat: the ordinary wavefunction and the lambda-wavefunction coincide
  auto ham = [hbar, m, kappa](double x, double v, double, double d2) {
    return -hbar * hbar / (2.0 * m) * d2 + 0.5 * kappa * x * x * v;
  };
  return residual_with_richardson(psi.eval, ham, energy, grid);
}

double hamiltonian_residual(const LambdaWavefunction& psi,
                            const OscillatorAdS2GroundParams& params,
                            const ResidualGrid& grid) {
  double hbar = psi.units.hbar;
  double R = params.radius;
  double m = 1.0;
  double kappa = params.mass_coupling_product(psi.units) / m;
  double energy = params.ground_energy(psi.units, m);
  auto gamma = [R](double x) { return R * R / (R * R + x * x); };
  // ordinary wavefunction psi_x = g^{-1/4} psi_lambda
  auto f = [&psi, gamma](double x) { return psi(x) * std::pow(gamma(x), -0.25); };
  // P^2/2m with P = -i hbar gamma^{-1/2} d/dx:
  //   P^2 f = -hbar^2 [ gamma^{-1} f'' - (1/2) gamma' gamma^{-2} f' ]
  auto ham = [hbar, m, kappa, R, gamma](double x, double v, double d1, double d2) {
    double g = gamma(x);
    double gp = -2.0 * x * g * g / (R * R);
    double kinetic = -hbar * hbar / (2.0 * m) * (d2 / g - 0.5 * gp / (g * g) * d1);
    return kinetic + 0.5 * kappa * g * x * x * v;
  };
  return residual_with_richardson(f, ham, energy, grid);
}

LambdaWavefunction reparametrize_state(const LambdaWavefunction& psi,
                                       const geom::Diffeomorphism& d,
                                       const quad::Config& cfg) {
  auto f = d.forward;
  auto fp = d.derivative;
  auto base = psi.eval;

  LambdaWavefunction out;
  out.eval = [base, f, fp](double y) { return base(f(y)) * std::sqrt(fp(y)); };
  out.metric = geom::pull_back_metric(psi.metric, d);
  out.units = psi.units;
  out.label = psi.label + "@" + d.label;
  // invert the width hint through the map (monotone forward)
  double w = psi.width_hint, lo = 0.0, hi = 1.0;
  while (f(hi) < w && hi < 1e8) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < w ? lo : hi) = mid;
  }
  out.width_hint = std::max(0.5 * (lo + hi), 1e-3);
  out.normalization_check = check_normalization(out, cfg);
  return out;
}

}  // namespace cwig::states
