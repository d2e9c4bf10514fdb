#include "cwig/entropy.hpp"

#include <cmath>
#include <limits>

#include "cwig/specfun.hpp"

namespace cwig::entropy {

namespace {

double xlog(double v) { return v == 0.0 ? 0.0 : v * std::log(std::abs(v)); }

EntropyValue from_result(const quad::Result& r, double scale) {
  EntropyValue e;
  e.value = scale * r.value;
  e.error_estimate = std::abs(scale) * r.error_estimate;
  e.evaluations = r.evaluations;
  e.converged = r.converged;
  return e;
}

}  // namespace

double quasientropy_discrete(const QuasiDistribution& q) {
  double sum = q.weights.sum();
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("quasientropy_discrete: weights must sum to 1, got " +
                                std::to_string(sum));
  double h = 0.0;
  for (Eigen::Index i = 0; i < q.weights.size(); ++i) h -= xlog(q.weights[i]);
  return h;
}

ChainRuleCheck quasientropy_chain_check(const Eigen::MatrixXd& joint) {
  double sum = joint.sum();
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("quasientropy_chain_check: joint must sum to 1");
  ChainRuleCheck out{0.0, 0.0, 0.0};
  for (Eigen::Index i = 0; i < joint.rows(); ++i)
    for (Eigen::Index jj = 0; jj < joint.cols(); ++jj) out.lhs -= xlog(joint(i, jj));
  for (Eigen::Index jj = 0; jj < joint.cols(); ++jj) {
    double pj = joint.col(jj).sum();
    if (std::abs(pj) < 1e-14)
      throw ZeroMarginalError("quasientropy_chain_check: marginal p(y_j) vanishes at j=" +
                              std::to_string(jj));
    double h_cond = 0.0;
    for (Eigen::Index i = 0; i < joint.rows(); ++i) h_cond -= xlog(joint(i, jj) / pj);
    out.rhs += -xlog(pj) + pj * h_cond;  // H~(Y) term plus p(y_j) H~(X|y_j)
  }
  out.defect = out.lhs - out.rhs;
  return out;
}

// ---------------------------------------------------------------------------
// closed forms: flat oscillator entropy and the radial log integral
// ---------------------------------------------------------------------------

namespace {

// shared triple sum: returns sum over q, roots, l of
//   binom(n,q) [ sign_ei (-1)^q lam^l 2^{q-l} / l! e^{-lam/2} Ei(lam/2) * half
//                + sign_rat (-1)^{s+q} ... ]
// in the exact shapes of the two printed expressions; everything in long
// double because the alternating sum cancels heavily as n grows.
long double root_ei_sum(int n, bool entropy_form) {
  if (n == 0) return 0.0L;
  Eigen::ArrayXd roots = specfun::laguerre_roots(n);
  long double total = 0.0L;
  int sgn_n = (n % 2 == 0) ? 1 : -1;
  for (int ri = 0; ri < n; ++ri) {
    long double lam = roots[ri];
    long double eei = std::exp(-0.5 * double(lam)) * specfun::exp_integral_ei(0.5 * double(lam));
    long double binom_nq = 1.0L;
    for (int q = 0; q <= n; ++q) {
      if (q > 0) binom_nq = binom_nq * (n - q + 1) / q;
      int sgn_q = (q % 2 == 0) ? 1 : -1;
      long double lam_l = 1.0L, l_fact = 1.0L;
      for (int l = 0; l <= q; ++l) {
        if (l > 0) {
          lam_l *= lam;
          l_fact *= l;
        }
        long double two_ql = std::pow(2.0L, (long double)(q - l));
        long double ei_term, rat_sum = 0.0L;
        if (entropy_form) {
          // (-1)^{q+n} lam^l 2^{q-l} / l! e^{-lam/2} Ei(lam/2)
          ei_term = sgn_q * sgn_n * lam_l * two_ql / l_fact * eei;
        } else {
          // (-1)^{q+1} lam^l 2^{q-l-1} / l!
          ei_term = -sgn_q * lam_l * two_ql * 0.5L / l_fact * eei;
        }
        for (int k = 1; k <= l; ++k) {
          long double s_fact = 1.0L;
          for (int s = 0; s <= k - 1; ++s) {
            if (s > 0) s_fact *= s;
            int sgn_s = (s % 2 == 0) ? 1 : -1;
            long double lmks = std::pow(lam, (long double)(l - k + s));
            long double lk_fact = 1.0L;
            for (int ii = 2; ii <= l - k; ++ii) lk_fact *= ii;
            long double base = lmks / (s_fact * lk_fact * k);
            if (entropy_form) {
              // - (-1)^{s+q+n} lam^{l-k+s} 2^{q-l-s+k} / (s! (l-k)! k)
              rat_sum -= sgn_s * sgn_q * sgn_n *
                         std::pow(2.0L, (long double)(q - l - s + k)) * base;
            } else {
              // + (-1)^{s+q} lam^{l-k+s} 2^{q-l-s+k-1} / (s! (l-k)! k)
              rat_sum += sgn_s * sgn_q *
                         std::pow(2.0L, (long double)(q - l - s + k - 1)) * base;
            }
          }
        }
        total += binom_nq * (ei_term + rat_sum);
      }
    }
  }
  return total;
}

}  // namespace

double flat_entropy_closed_form(int n) {
  if (n < 0) throw std::domain_error("flat_entropy_closed_form: n must be >= 0");
  long double base = 1.0L + 2.0L * n - (long double)specfun::kLog2;
  return double(base + root_ei_sum(n, true));
}

double appendix_integral(int n) {
  if (n < 1 || n > 40)
    throw std::domain_error("appendix_integral: n must be in [1, 40]");
  return double(root_ei_sum(n, false));
}

// ---------------------------------------------------------------------------
// phase-space entropy
// ---------------------------------------------------------------------------

namespace {

// -(1/2) int_0^inf T(u) e^{-u} log|T(u) e^{-u}| du with panel splits at the
// zeros of T; covers single flat levels and mixtures at a common alpha.
EntropyValue radial_entropy(const std::function<double(double)>& T,
                            const std::vector<double>& zeros, double u_cut,
                            const quad::Config& cfg) {
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-10);
  c.rel_tol = std::min(cfg.rel_tol, 1e-10);
  auto g = [&T](double u) { return xlog(T(u) * std::exp(-u)); };
  quad::Result r = quad::integrate_1d_split(g, {0.0, u_cut}, zeros, c);
  return from_result(r, -0.5);
}

bool mixed_flat_common_alpha(const wigner::WignerFunction& w, double& alpha,
                             std::vector<std::pair<double, int>>& levels) {
  if (w.kind != wigner::Kind::mixed || !w.components) return false;
  alpha = 0.0;
  for (const auto& [wt, comp] : *w.components) {
    if (comp.kind != wigner::Kind::flat_closed) return false;
    double a = comp.params.at("alpha");
    if (alpha == 0.0)
      alpha = a;
    else if (std::abs(a - alpha) > 1e-12 * alpha)
      return false;
    levels.emplace_back(wt, int(std::lround(comp.params.at("n"))));
  }
  return true;
}

EntropyValue ads2_engine_entropy(const wigner::WignerFunction& w, const quad::Config& cfg) {
  int j = int(std::lround(w.params.at("j")));
  double R = w.params.at("R");
  wigner::Ads2WignerEngine engine(j, R, w.units);
  double hbar = w.units.hbar;

  quad::Config inner_cfg = cfg;
  inner_cfg.abs_tol = std::min(cfg.abs_tol, 1e-8) * 2e-2 / std::max(R, 1.0);
  inner_cfg.rel_tol = 1e-3;

  double t_cut = (std::log(1.0 / inner_cfg.abs_tol) + 8.0 + 2.0 * j) / (2.0 * R);

  long evals = 0;
  bool ok = true;
  double max_inner_err = 0.0;

  auto inner = [&](double x) {
    auto sl = engine.slice(x);
    // beyond this point the whole remaining tail is negligible
    double bound = engine.slice_mass_bound(sl);
    double safe = bound * (40.0 + std::abs(std::log(bound + 1e-300)));
    if (safe * (std::abs(x) + R) < 2e-3 * cfg.abs_tol) return 0.0;
    double hp = specfun::kPi / (2.0 * std::abs(x) / 1.0 + 1e-3 / R);  // t half-period
    double step = std::min(0.5 * hp, t_cut / 48.0);
    auto f = [&engine, &sl](double t) { return engine.eval_slice(sl, t); };
    std::vector<double> zeros = quad::find_sign_changes(f, 0.0, t_cut, step);
    auto g = [&f](double t) { return xlog(f(t)); };
    quad::Result r = quad::integrate_1d_split(g, {0.0, t_cut}, zeros, inner_cfg);
    evals += r.evaluations;
    ok = ok && r.converged;
    max_inner_err = std::max(max_inner_err, r.error_estimate);
    return r.value;
  };

  quad::Config outer_cfg = cfg;
  outer_cfg.abs_tol = 0.2 * std::min(cfg.abs_tol, 1e-8);
  outer_cfg.rel_tol = 1e-4;

  quad::Result r1 = quad::tanhsinh_finite(inner, 0.0, 4.0 * R, outer_cfg);
  quad::Result r2 = quad::tanhsinh_finite(inner, 4.0 * R, 32.0 * R, outer_cfg);
  // tail via x = 1/v; the slice mass bound short-circuits far nodes
  quad::Result r3 = quad::tanhsinh_finite(
      [&inner](double v) { return inner(1.0 / v) / (v * v); }, 0.0, 1.0 / (32.0 * R),
      outer_cfg);

  double scale = -4.0 * hbar / w.units.h();
  EntropyValue e;
  e.value = scale * (r1.value + r2.value + r3.value);
  e.error_estimate = std::abs(scale) * (r1.error_estimate + r2.error_estimate +
                                        r3.error_estimate + 8.0 * R * max_inner_err);
  e.evaluations = evals + r1.evaluations + r2.evaluations + r3.evaluations;
  e.converged = ok && r1.converged && r2.converged && r3.converged;
  return e;
}

// generic nested route; also the 2D oracle
EntropyValue entropy_2d_generic(const wigner::WignerFunction& w, const quad::Config& cfg) {
  double scale0 = std::abs(w.eval(0.0, 0.0)) + std::abs(w.eval(0.3 * w.x_width_hint, 0.0)) +
                  std::abs(w.eval(0.0, 0.3 * w.p_width_hint)) + 1e-300;

  // momentum window
  double p_cut = w.p_width_hint;
  if (w.p_decay_rate > 0.0) {
    p_cut = (std::log(1.0 / std::min(cfg.abs_tol, 1e-8)) + 6.0) / w.p_decay_rate;
  } else {
    while (p_cut < 1e4 * w.p_width_hint &&
           std::abs(w.eval(0.0, p_cut)) + std::abs(w.eval(0.41 * w.x_width_hint, p_cut)) >
               1e-13 * scale0)
      p_cut *= 1.4;
    p_cut *= 1.25;
  }

  quad::Config inner_cfg = cfg;
  inner_cfg.rel_tol = 1e-3;
  long evals = 0;
  bool ok = true;
  double max_inner_err = 0.0;

  auto inner = [&](double x) {
    auto f = [&w, x](double p) { return w.eval(x, p); };
    double hp = w.p_half_period ? w.p_half_period(x) : quad::kInf;
    double step = std::min(std::isfinite(hp) ? 0.5 * hp : p_cut / 48.0, p_cut / 48.0);
    std::vector<double> zeros = quad::find_sign_changes(f, 0.0, p_cut, step);
    auto g = [&f](double p) { return xlog(f(p)); };
    quad::Result r = quad::integrate_1d_split(g, {0.0, p_cut}, zeros, inner_cfg);
    evals += r.evaluations;
    ok = ok && r.converged;
    max_inner_err = std::max(max_inner_err, r.error_estimate);
    return 2.0 * r.value;  // rho is even in p for the real states built here
  };

  // spatial window from the decay of the inner integral itself
  double x_cut = 2.0 * w.x_width_hint;
  inner_cfg.abs_tol = 0.25 * std::min(cfg.abs_tol, 1e-8) / x_cut;
  double tail_goal = 0.1 * std::min(cfg.abs_tol, 1e-8);
  for (int it = 0; it < 24; ++it) {
    double probe = std::abs(inner(x_cut)) + std::abs(inner(-x_cut));
    if (probe * x_cut < tail_goal) break;
    x_cut *= 1.5;
  }
  inner_cfg.abs_tol = 0.25 * std::min(cfg.abs_tol, 1e-8) / x_cut;

  quad::Config outer_cfg = cfg;
  outer_cfg.abs_tol = 0.25 * std::min(cfg.abs_tol, 1e-8);
  outer_cfg.rel_tol = 1e-4;
  quad::Result rp = quad::tanhsinh_finite(inner, 0.0, x_cut, outer_cfg);
  quad::Result rn = quad::tanhsinh_finite([&inner](double x) { return inner(-x); }, 0.0,
                                          x_cut, outer_cfg);

  double scale = -1.0 / w.units.h();
  EntropyValue e;
  e.value = scale * (rp.value + rn.value);
  e.error_estimate = std::abs(scale) * (rp.error_estimate + rn.error_estimate +
                                        2.0 * x_cut * max_inner_err + tail_goal);
  e.evaluations = evals + rp.evaluations + rn.evaluations;
  e.converged = ok && rp.converged && rn.converged;
  return e;
}

}  // namespace

EntropyValue phase_space_entropy_2d(const wigner::WignerFunction& w, const quad::Config& cfg) {
  return entropy_2d_generic(w, cfg);
}

EntropyValue phase_space_entropy(const wigner::WignerFunction& w, const quad::Config& cfg) {
  using wigner::Kind;
  if (w.kind == Kind::flat_closed) {
    int n = int(std::lround(w.params.at("n")));
    double sign = (n % 2 == 0) ? 2.0 : -2.0;
    auto T = [n, sign](double u) { return sign * specfun::laguerre(n, 2.0 * u); };
    Eigen::ArrayXd roots = specfun::laguerre_roots(std::max(n, 1));
    std::vector<double> zeros;
    if (n >= 1)
      for (int i = 0; i < roots.size(); ++i) zeros.push_back(0.5 * roots[i]);
    return radial_entropy(T, zeros, 60.0 + 12.0 * n, cfg);
  }
  {
    double alpha = 0.0;
    std::vector<std::pair<double, int>> levels;
    if (mixed_flat_common_alpha(w, alpha, levels)) {
      int n_max = 0;
      for (auto& [wt, n] : levels) n_max = std::max(n_max, n);
      auto T = [levels](double u) {
        double acc = 0.0;
        for (const auto& [wt, n] : levels)
          acc += wt * ((n % 2 == 0) ? 2.0 : -2.0) * specfun::laguerre(n, 2.0 * u);
        return acc;
      };
      double u_cut = 60.0 + 12.0 * n_max;
      std::vector<double> zeros = quad::find_sign_changes(T, 0.0, u_cut, 0.125);
      return radial_entropy(T, zeros, u_cut, cfg);
    }
  }
  if (w.kind == Kind::ads2_j1 || w.kind == Kind::ads2_residue)
    return ads2_engine_entropy(w, cfg);
  return entropy_2d_generic(w, cfg);
}

// ---------------------------------------------------------------------------
// position and momentum entropies
// ---------------------------------------------------------------------------

namespace {

std::vector<double> wavefunction_zeros(const states::LambdaWavefunction& psi) {
  double wdw = 1.5 * psi.width_hint;
  auto f = [&psi](double x) { return psi(x); };
  return quad::find_sign_changes(f, -wdw, wdw, wdw / 64.0);
}

}  // namespace

EntropyValue position_entropy(const states::LambdaWavefunction& psi, const quad::Config& cfg) {
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-9);
  c.rel_tol = std::min(cfg.rel_tol, 1e-9);
  double lp = psi.units.planck_length;
  auto g = [&psi, lp](double x) {
    double rho = psi.density(x);
    if (rho == 0.0) return 0.0;
    return -rho * std::log(lp * rho / psi.metric.volume_element(x));
  };
  quad::Result r = quad::integrate_1d_split(g, {-quad::kInf, quad::kInf},
                                            wavefunction_zeros(psi), c);
  return from_result(r, 1.0);
}

EntropyValue position_entropy_lebesgue(const states::LambdaWavefunction& psi,
                                       const quad::Config& cfg) {
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-9);
  c.rel_tol = std::min(cfg.rel_tol, 1e-9);
  auto g = [&psi](double x) { return -xlog(psi.density(x)); };
  quad::Result r = quad::integrate_1d_split(g, {-quad::kInf, quad::kInf},
                                            wavefunction_zeros(psi), c);
  return from_result(r, 1.0);
}

EntropyValue metric_log_volume_term(const states::LambdaWavefunction& psi,
                                    const quad::Config& cfg) {
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-9);
  c.rel_tol = std::min(cfg.rel_tol, 1e-9);
  auto g = [&psi](double x) {
    double rho = psi.density(x);
    if (rho == 0.0) return 0.0;
    return rho * std::log(psi.metric.volume_element(x));
  };
  quad::Result r = quad::integrate_real_line(g, c);
  return from_result(r, 1.0);
}

EntropyValue momentum_entropy_lebesgue(const states::MomentumWavefunction& mom,
                                       const quad::Config& cfg) {
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, 1e-9);
  c.rel_tol = std::min(cfg.rel_tol, 1e-9);
  // split at sign changes of Re psi_p (for the real states the imaginary
  // part carries no extra zeros of the density)
  auto re = [&mom](double p) { return mom(p).real(); };
  std::vector<double> zeros = quad::find_sign_changes(re, 0.0, mom.p_max, mom.p_max / 512.0);
  auto g = [&mom](double p) { return -xlog(mom.density(p)); };
  quad::Result r = quad::integrate_1d_split(g, {0.0, mom.p_max}, zeros, c);
  return from_result(r, 2.0);  // density is even in p
}

EntropyValue momentum_entropy(const states::LambdaWavefunction& psi,
                              const states::MomentumWavefunction& mom,
                              const quad::Config& cfg) {
  EntropyValue hp = momentum_entropy_lebesgue(mom, cfg);
  EntropyValue t = metric_log_volume_term(psi, cfg);
  double planck_momentum = psi.units.h() / psi.units.planck_length;
  EntropyValue e;
  e.value = hp.value - std::log(planck_momentum) - t.value;
  e.error_estimate = hp.error_estimate + t.error_estimate;
  e.evaluations = hp.evaluations + t.evaluations;
  e.converged = hp.converged && t.converged;
  return e;
}

EntropyValue momentum_entropy(const states::LambdaWavefunction& psi, const quad::Config& cfg) {
  states::MomentumWavefunction mom = states::momentum_representation(psi, cfg);
  return momentum_entropy(psi, mom, cfg);
}

EntropyReport bound_report(const states::LambdaWavefunction& psi,
                           const wigner::WignerFunction& w, const quad::Config& cfg) {
  EntropyReport rep;
  rep.state_label = psi.label;
  rep.hbar = psi.units.hbar;
  rep.planck_length = psi.units.planck_length;
  rep.abs_tol = cfg.abs_tol;
  rep.rel_tol = cfg.rel_tol;
  rep.dimension = 1;

  EntropyValue hxp = phase_space_entropy(w, cfg);
  EntropyValue hx = position_entropy(psi, cfg);
  EntropyValue hp = momentum_entropy(psi, cfg);
  EntropyValue t = metric_log_volume_term(psi, cfg);

  rep.h_phase_space = hxp.value;
  rep.h_position = hx.value;
  rep.h_momentum = hp.value;
  rep.metric_log_volume_term = t.value;
  rep.mutual_info_defect = hx.value + hp.value - hxp.value;
  rep.bbm_bound = rep.dimension * (1.0 - specfun::kLog2);
  rep.conjectured_bound_rhs = hx.value + hp.value + t.value;
  rep.err_phase_space = hxp.error_estimate;
  rep.err_position = hx.error_estimate;
  rep.err_momentum = hp.error_estimate;
  rep.evaluations = hxp.evaluations + hx.evaluations + hp.evaluations + t.evaluations;
  rep.converged = hxp.converged && hx.converged && hp.converged && t.converged;
  return rep;
}

MixedEntropyTotals total_entropy_mixed(const std::vector<double>& probs,
                                       const std::vector<double>& component_entropies) {
  if (probs.size() != component_entropies.size())
    throw std::invalid_argument("total_entropy_mixed: size mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("total_entropy_mixed: probabilities must lie in [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("total_entropy_mixed: probabilities must sum to 1");
  MixedEntropyTotals out;
  for (size_t i = 0; i < probs.size(); ++i) {
    out.h_von_neumann -= xlog(probs[i]);
    out.h_total += probs[i] * component_entropies[i];
  }
  out.h_total += out.h_von_neumann;
  return out;
}

EntropyValue ensemble_mutual_information(const wigner::WignerFunction& mixed,
                                         const std::vector<double>& probs,
                                         const std::vector<wigner::WignerFunction>& components,
                                         const quad::Config& cfg) {
  if (probs.size() != components.size())
    throw std::invalid_argument("ensemble_mutual_information: size mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("ensemble_mutual_information: invalid probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("ensemble_mutual_information: probabilities must sum to 1");

  EntropyValue mixed_h = phase_space_entropy(mixed, cfg);
  EntropyValue out;
  out.value = mixed_h.value;
  out.error_estimate = mixed_h.error_estimate;
  out.evaluations = mixed_h.evaluations;
  out.converged = mixed_h.converged;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0.0) continue;
    EntropyValue h = phase_space_entropy(components[i], cfg);
    out.value -= probs[i] * h.value;
    out.error_estimate += probs[i] * h.error_estimate;
    out.evaluations += h.evaluations;
    out.converged = out.converged && h.converged;
  }
  return out;
}

// ---------------------------------------------------------------------------
// the j = 1 oscillatory-log cross integral (value pi/2)
// ---------------------------------------------------------------------------

quad::Result ads2_j1_log_cross_integral(const quad::Config& cfg) {
  // bracket h(x,p) = cos(px) + sin(px)/x = sqrt(1 + 1/x^2) cos(px - atan(1/x))
  auto bracket = [](double x, double p) {
    double px = p * x;
    double sinc = (std::abs(px) < 1e-8) ? p * (1.0 - px * px / 6.0) : std::sin(px) / x;
    return std::cos(px) + sinc;
  };
  // outer-tail cutoff: |inner(x)|/(1+x^2) ~ C/x^4 with C ~ 30
  double x_stop = std::pow(30.0 / (1e-3 * cfg.abs_tol), 0.25);
  auto f = [bracket, x_stop](double x, double p) {
    if (x > x_stop) return 0.0;
    double h = bracket(x, p);
    if (h == 0.0) return 0.0;
    return std::exp(-p) / (1.0 + x * x) * h * std::log(h * h);
  };
  double p_high = std::log(1.0 / std::min(cfg.abs_tol, 1e-9)) + 14.0;
  auto p_breaks = [p_high](double x) {
    std::vector<double> z;
    if (x <= 0.0) return z;
    double phi = std::atan2(1.0, x);
    double first = (phi + 0.5 * specfun::kPi) / x;
    double step = specfun::kPi / x;
    for (double p = first; p < p_high; p += step) z.push_back(p);
    return z;
  };
  std::vector<double> x_breaks = {0.25, 1.0, 4.0, 16.0, 64.0, 256.0, 1024.0};
  quad::Result r =
      quad::integrate_2d(f, {0.0, quad::kInf}, {0.0, quad::kInf}, cfg, x_breaks, p_breaks);
  r.error_estimate += 30.0 / (3.0 * x_stop * x_stop * x_stop);  // truncation bound
  return r;
}

}  // namespace cwig::entropy
