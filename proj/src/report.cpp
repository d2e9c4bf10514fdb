#include "cwig/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cwig/geometry.hpp"
#include "cwig/specfun.hpp"
#include "cwig/states.hpp"
#include "cwig/wigner.hpp"

namespace cwig::report {

namespace {

using json = nlohmann::json;

constexpr double kOneMinusLog2 = 0.30685281944005469;   // 1 - log 2
constexpr double kAds2GroundEntropy = 0.19314718055994531;  // log 2 - 1/2

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double flat_n1_entropy() {
  return 1.0 - specfun::kLog2 +
         2.0 / std::sqrt(std::exp(1.0)) * specfun::exp_integral_ei(0.5);
}

double flat_n1_defect() {
  return -2.0 + std::log(4.0) -
         2.0 / std::sqrt(std::exp(1.0)) * specfun::exp_integral_ei(0.5) +
         2.0 * specfun::kEulerMascheroni;
}

quad::Config tighten(const quad::Config& cfg, double abs_tol) {
  quad::Config c = cfg;
  c.abs_tol = std::min(cfg.abs_tol, abs_tol);
  c.rel_tol = std::min(cfg.rel_tol, abs_tol);
  return c;
}

}  // namespace

CheckResult make_check(const std::string& name, double expected, double actual,
                       double tolerance) {
  CheckResult c;
  c.name = name;
  c.expected = expected;
  c.actual = actual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(actual) && std::abs(actual - expected) <= tolerance;
  return c;
}

// ---------------------------------------------------------------------------
// figure tables
// ---------------------------------------------------------------------------

FigureTable cmd_quasientropy_curve(double p_min, double p_max, int steps) {
  if (!(p_min < p_max) || steps < 2)
    throw std::invalid_argument("quasientropy-curve: need p_min < p_max and steps >= 2");
  FigureTable t;
  t.columns = {"p", "quasientropy", "negative_region"};
  for (int i = 0; i < steps; ++i) {
    double p = p_min + (p_max - p_min) * i / (steps - 1);
    double h = 0.0;
    for (double w : {p, 1.0 - p})
      if (w != 0.0) h -= w * std::log(std::abs(w));
    t.rows.push_back({p, h, h < 0.0 ? 1.0 : 0.0});
  }
  t.provenance = {"figure: two-state quasientropy vs quasiprobability of one state",
                  "definition: H = -p log|p| - (1-p) log|1-p|, 0 log 0 = 0",
                  "entropy_units: nats"};
  return t;
}

FigureTable cmd_flat_levels(int n_max, double alpha, const quad::Config& cfg) {
  if (n_max < 0 || n_max > 10)
    throw std::invalid_argument("flat-levels: n_max must be in [0, 10]");
  FigureTable t;
  t.columns = {"n", "h_xp_closed_form", "h_xp_quadrature", "h_x_plus_h_p", "bbm_bound"};
  geom::Units units;
  for (int n = 0; n <= n_max; ++n) {
    states::OscillatorFlatParams params;
    params.n = n;
    params.coupling = alpha * alpha;  // alpha = sqrt(kappa m)/hbar at m = hbar = 1
    auto psi = states::flat_oscillator_state(params, units, cfg);
    auto w = wigner::wigner_flat_closed(params, units);
    double closed = entropy::flat_entropy_closed_form(n);
    auto quadv = entropy::phase_space_entropy(w, cfg);
    auto hx = entropy::position_entropy(psi, cfg);
    auto hp = entropy::momentum_entropy(psi, cfg);
    t.rows.push_back({double(n), closed, quadv.value, hx.value + hp.value,
                      1.0 - specfun::kLog2});
  }
  t.provenance = {
      "figure: phase-space entropy and invariant entropy sum vs oscillator level",
      "alpha: " + fmt(alpha), "abs_tol: " + fmt(cfg.abs_tol),
      "units: hbar=1, l_P=1, h=2*pi", "entropy_units: nats"};
  return t;
}

FigureTable cmd_ads2_levels(int j_max, double radius, const quad::Config& cfg) {
  if (j_max < 1 || j_max > 8)
    throw std::invalid_argument("ads2-levels: j_max must be in [1, 8]");
  if (!(radius > 0.0)) throw std::invalid_argument("ads2-levels: radius must be > 0");
  FigureTable t;
  t.columns = {"j", "h_xp", "h_x_plus_h_p", "conjectured_bound_rhs", "bbm_bound"};
  geom::Units units;
  for (int j = 1; j <= j_max; ++j) {
    states::OscillatorAdS2GroundParams params;
    params.j = j;
    params.radius = radius;
    auto psi = states::ads2_ground_state(params, units, cfg);
    auto w = (j == 1) ? wigner::wigner_ads2_j1(radius, units)
                      : wigner::wigner_ads2_residue(j, radius, units);
    auto hxp = entropy::phase_space_entropy(w, cfg);
    auto hx = entropy::position_entropy(psi, cfg);
    auto hp = entropy::momentum_entropy(psi, cfg);
    auto tt = entropy::metric_log_volume_term(psi, cfg);
    t.rows.push_back({double(j), hxp.value, hx.value + hp.value,
                      hx.value + hp.value + tt.value, 1.0 - specfun::kLog2});
  }
  t.provenance = {
      "figure: phase-space entropy, entropy sum and conjectured bound vs level j",
      "radius: " + fmt(radius), "abs_tol: " + fmt(cfg.abs_tol),
      "units: hbar=1, l_P=1, h=2*pi", "entropy_units: nats"};
  return t;
}

FigureTable cmd_wigner_grid(const RunConfig& rc, const quad::Config& cfg) {
  if (rc.nx < 2 || rc.np < 2 || double(rc.nx) * double(rc.np) > 1e6)
    throw std::invalid_argument("wigner-grid: grid must be 2x2 .. 1e6 points");
  if (!(rc.x_min < rc.x_max) || !(rc.grid_p_min < rc.grid_p_max))
    throw std::invalid_argument("wigner-grid: empty window");
  geom::Units units;
  wigner::WignerFunction w;
  if (rc.geometry == "flat") {
    states::OscillatorFlatParams params;
    params.n = rc.n;
    params.coupling = rc.alpha * rc.alpha;
    w = wigner::wigner_flat_closed(params, units);
  } else if (rc.geometry == "ads2") {
    w = (rc.j == 1) ? wigner::wigner_ads2_j1(rc.radius, units)
                    : wigner::wigner_ads2_residue(rc.j, rc.radius, units);
  } else {
    throw std::invalid_argument("wigner-grid: geometry must be flat or ads2");
  }
  (void)cfg;
  FigureTable t;
  t.columns = {"x", "p", "rho"};
  for (int i = 0; i < rc.nx; ++i) {
    double x = rc.x_min + (rc.x_max - rc.x_min) * i / (rc.nx - 1);
    for (int k = 0; k < rc.np; ++k) {
      double p = rc.grid_p_min + (rc.grid_p_max - rc.grid_p_min) * k / (rc.np - 1);
      t.rows.push_back({x, p, w.eval(x, p)});
    }
  }
  t.provenance = {"figure: quasiprobability density over phase space",
                  "state: " + w.source_label, "geometry: " + rc.geometry,
                  "units: hbar=1, l_P=1, h=2*pi"};
  return t;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

void write_csv(const FigureTable& t, std::ostream& os) {
  for (const auto& line : t.provenance) os << "# " << line << "\n";
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
}

namespace {

json config_json(const RunConfig& rc) {
  json cfg;
  cfg["command"] = rc.command;
  cfg["geometry"] = rc.geometry;
  cfg["tol"] = rc.tol;
  cfg["format"] = rc.format == Format::csv ? "csv" : "json";
  if (rc.command == "flat-levels") {
    cfg["n_max"] = rc.n_max;
    cfg["alpha"] = rc.alpha;
  } else if (rc.command == "ads2-levels") {
    cfg["j_max"] = rc.j_max;
    cfg["radius"] = rc.radius;
  } else if (rc.command == "wigner-grid") {
    cfg["n"] = rc.n;
    cfg["j"] = rc.j;
    cfg["alpha"] = rc.alpha;
    cfg["radius"] = rc.radius;
    cfg["x_min"] = rc.x_min;
    cfg["x_max"] = rc.x_max;
    cfg["p_min"] = rc.grid_p_min;
    cfg["p_max"] = rc.grid_p_max;
    cfg["nx"] = rc.nx;
    cfg["np"] = rc.np;
  } else if (rc.command == "quasientropy-curve") {
    cfg["p_min"] = rc.p_min;
    cfg["p_max"] = rc.p_max;
    cfg["steps"] = rc.steps;
  } else if (rc.command == "verify") {
    cfg["suite"] = rc.suite;
    if (rc.perturb_entropy != 0.0) cfg["perturb_entropy"] = rc.perturb_entropy;
  }
  return cfg;
}

}  // namespace

void write_json(const FigureTable& t, const RunConfig& rc, std::ostream& os) {
  json j;
  j["schema_version"] = 1;
  j["config"] = config_json(rc);
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  j["provenance"] = t.provenance;
  os << j.dump(2) << "\n";
}

std::string entropy_report_json(const entropy::EntropyReport& rep) {
  json j;
  j["schema_version"] = 1;
  j["state"] = rep.state_label;
  j["dimension"] = rep.dimension;
  j["entropy_units"] = "nats";
  j["h_phase_space"] = rep.h_phase_space;
  j["h_position"] = rep.h_position;
  j["h_momentum"] = rep.h_momentum;
  j["mutual_info_defect"] = rep.mutual_info_defect;
  j["bbm_bound"] = rep.bbm_bound;
  j["conjectured_bound_rhs"] = rep.conjectured_bound_rhs;
  j["metric_log_volume_term"] = rep.metric_log_volume_term;
  j["units"] = {{"hbar", rep.hbar}, {"planck_length", rep.planck_length}};
  j["tolerances"] = {{"abs_tol", rep.abs_tol}, {"rel_tol", rep.rel_tol}};
  j["diagnostics"] = {{"err_phase_space", rep.err_phase_space},
                      {"err_position", rep.err_position},
                      {"err_momentum", rep.err_momentum},
                      {"evaluations", rep.evaluations},
                      {"converged", rep.converged}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// verification checks
// ---------------------------------------------------------------------------

std::vector<CheckResult> check_flat_ground(const quad::Config& cfg) {
  std::vector<CheckResult> out;
  geom::Units units;
  states::OscillatorFlatParams params;  // n = 0
  auto w = wigner::wigner_flat_closed(params, units);
  out.push_back(make_check("flat n=0: closed form = 1 - log 2",
                           kOneMinusLog2, entropy::flat_entropy_closed_form(0), 1e-12));
  auto h2d = entropy::phase_space_entropy_2d(w, tighten(cfg, 1e-8));
  out.push_back(
      make_check("flat n=0: 2D quadrature entropy", kOneMinusLog2, h2d.value, 1e-6));
  return out;
}

std::vector<CheckResult> check_flat_first_excited(const quad::Config& cfg) {
  std::vector<CheckResult> out;
  geom::Units units;
  states::OscillatorFlatParams params;
  params.n = 1;
  auto w = wigner::wigner_flat_closed(params, units);
  double closed = entropy::flat_entropy_closed_form(1);
  out.push_back(make_check("flat n=1: closed form = 1 - log2 + (2/sqrt e) Ei(1/2)",
                           flat_n1_entropy(), closed, 1e-12));
  auto h2d = entropy::phase_space_entropy_2d(w, tighten(cfg, 1e-8));
  out.push_back(make_check("flat n=1: 2D quadrature entropy", flat_n1_entropy(),
                           h2d.value, 1e-6));
  out.push_back(
      make_check("flat n=1: closed vs quadrature", closed, h2d.value, 1e-5));
  return out;
}

std::vector<CheckResult> check_flat_closed_vs_quadrature(int n_max, const quad::Config& cfg) {
  std::vector<CheckResult> out;
  geom::Units units;
  for (int n = 0; n <= n_max; ++n) {
    states::OscillatorFlatParams params;
    params.n = n;
    auto w = wigner::wigner_flat_closed(params, units);
    auto h2d = entropy::phase_space_entropy_2d(w, tighten(cfg, 1e-8));
    out.push_back(make_check("flat n=" + std::to_string(n) + ": closed vs 2D quadrature",
                             entropy::flat_entropy_closed_form(n), h2d.value, 1e-5));
  }
  return out;
}

std::vector<CheckResult> check_ads2_units_independence(const quad::Config& cfg) {
  std::vector<CheckResult> out;
  for (double R : {0.5, 1.0, 2.0}) {
    auto w = wigner::wigner_ads2_j1(R, geom::Units{});
    auto h = entropy::phase_space_entropy(w, tighten(cfg, 1e-8));
    out.push_back(make_check("ads2 j=1 entropy, R=" + fmt(R), kAds2GroundEntropy,
                             h.value, 1e-6));
  }
  for (double hb : {2.0}) {
    geom::Units units;
    units.hbar = hb;
    auto w = wigner::wigner_ads2_j1(1.0, units);
    auto h = entropy::phase_space_entropy(w, tighten(cfg, 1e-8));
    out.push_back(make_check("ads2 j=1 entropy, hbar=" + fmt(hb), kAds2GroundEntropy,
                             h.value, 1e-6));
  }
  return out;
}

std::vector<CheckResult> check_footnote_integral(const quad::Config& cfg) {
  auto r = entropy::ads2_j1_log_cross_integral(tighten(cfg, 2e-10));
  return {make_check("oscillatory-log cross integral = pi/2", 0.5 * specfun::kPi, r.value,
                     1e-9)};
}

std::vector<CheckResult> check_ads2_marginals(const quad::Config& cfg) {
  std::vector<CheckResult> out;
  geom::Units units;
  double R = 1.0;
  auto w = wigner::wigner_ads2_j1(R, units);
  auto mx = wigner::marginal_position(w, tighten(cfg, 1e-10));
  auto mp = wigner::marginal_momentum(w, tighten(cfg, 1e-10));
  double worst_x = 0.0, worst_p = 0.0;
  for (int i = 0; i < 101; ++i) {
    double x = -5.0 + 10.0 * i / 100.0;
    double expect = 2.0 / specfun::kPi * R * R * R / std::pow(R * R + x * x, 2.0);
    worst_x = std::max(worst_x, std::abs(mx(x) - expect));
    double p = -5.0 + 10.0 * i / 100.0;
    double expect_p = R / units.hbar * std::exp(-2.0 * std::abs(p) * R / units.hbar);
    worst_p = std::max(worst_p, std::abs(mp(p) - expect_p));
  }
  out.push_back(make_check("ads2 j=1 position marginal, 101-point sup error", 0.0,
                           worst_x, 1e-8));
  out.push_back(make_check("ads2 j=1 momentum marginal, 101-point sup error", 0.0,
                           worst_p, 1e-8));
  return out;
}

std::vector<CheckResult> check_residue_formula(const quad::Config& cfg) {
  std::vector<CheckResult> out;
  geom::Units units;
  double R = 1.0;
  {
    auto closed = wigner::wigner_ads2_j1(R, units);
    auto residue = wigner::wigner_ads2_residue(1, R, units);
    double worst = 0.0;
    for (int i = 0; i < 51; ++i)
      for (int k = 0; k < 51; ++k) {
        double x = -4.0 + 8.0 * i / 50.0;
        double p = -4.0 + 8.0 * k / 50.0;
        worst = std::max(worst, std::abs(closed.eval(x, p) - residue.eval(x, p)));
      }
    out.push_back(
        make_check("residue j=1 vs closed form, 51x51 sup error", 0.0, worst, 1e-10));
  }
  for (int j : {2, 3}) {
    states::OscillatorAdS2GroundParams params;
    params.j = j;
    params.radius = R;
    auto psi = states::ads2_ground_state(params, units, tighten(cfg, 1e-9));
    auto numeric = wigner::wigner_numeric(psi, tighten(cfg, 1e-9));
    auto residue = wigner::wigner_ads2_residue(j, R, units);
    double worst = 0.0;
    for (int i = 0; i < 21; ++i)
      for (int k = 0; k < 21; ++k) {
        double x = -3.0 + 6.0 * i / 20.0;
        double p = -3.0 + 6.0 * k / 20.0;
        worst = std::max(worst, std::abs(numeric.eval(x, p) - residue.eval(x, p)));
      }
    out.push_back(make_check("residue j=" + std::to_string(j) +
                                 " vs numeric transform, 21x21 sup error",
                             0.0, worst, 1e-6));
  }
  return out;
}

std::vector<CheckResult> check_appendix_identity(int n_max, const quad::Config& cfg) {
  std::vector<CheckResult> out;
  quad::Config c = tighten(cfg, 1e-10);
  for (int n = 1; n <= n_max; ++n) {
    double closed = entropy::appendix_integral(n);
    Eigen::ArrayXd roots = specfun::laguerre_roots(n);
    std::vector<double> breaks;
    for (int i = 0; i < roots.size(); ++i) breaks.push_back(std::sqrt(0.5 * roots[i]));
    auto f = [n](double r) {
      double l = specfun::laguerre(n, 2.0 * r * r);
      if (l == 0.0) return 0.0;
      return std::exp(-r * r) * l * std::log(std::abs(l)) * r;
    };
    auto q = quad::integrate_1d_split(f, {0.0, std::sqrt(60.0 + 12.0 * n)}, breaks, c);
    out.push_back(make_check("radial log integral closed form, n=" + std::to_string(n),
                             q.value, closed, 1e-8));
  }
  return out;
}

std::vector<CheckResult> check_normalizations(const quad::Config& cfg) {
  std::vector<CheckResult> out;
  geom::Units units;
  quad::Config c = tighten(cfg, 1e-10);
  for (int n = 0; n <= 5; ++n) {
    states::OscillatorFlatParams params;
    params.n = n;
    auto w = wigner::wigner_flat_closed(params, units);
    auto mx = wigner::marginal_position(w, c);
    auto r = quad::integrate_real_line(mx, c);
    out.push_back(make_check("wigner normalization, flat n=" + std::to_string(n), 1.0,
                             r.value, 1e-8));
  }
  for (int j = 1; j <= 3; ++j) {
    auto w = (j == 1) ? wigner::wigner_ads2_j1(1.0, units)
                      : wigner::wigner_ads2_residue(j, 1.0, units);
    auto mx = wigner::marginal_position(w, c);
    auto r = quad::integrate_real_line(mx, c);
    out.push_back(make_check("wigner normalization, ads2 j=" + std::to_string(j), 1.0,
                             r.value, 1e-8));
  }
  return out;
}

std::vector<CheckResult> check_bbm_bounds(const quad::Config& cfg, double perturb) {
  std::vector<CheckResult> out;
  geom::Units units;
  quad::Config c = tighten(cfg, 1e-9);
  {
    states::OscillatorFlatParams params;  // n = 0
    auto psi = states::flat_oscillator_state(params, units, c);
    auto hx = entropy::position_entropy(psi, c);
    auto hp = entropy::momentum_entropy(psi, c);
    out.push_back(make_check("flat n=0: H_X + H_P saturates the bound", kOneMinusLog2,
                             hx.value + hp.value + perturb, 1e-9));
  }
  // the bound must hold (>= bound - 1e-9) for every implemented state
  auto bound_gap = [&](const states::LambdaWavefunction& psi) {
    auto hx = entropy::position_entropy(psi, c);
    auto hp = entropy::momentum_entropy(psi, c);
    return hx.value + hp.value + perturb - kOneMinusLog2;
  };
  for (int n : {0, 1, 2, 3, 4, 5}) {
    states::OscillatorFlatParams params;
    params.n = n;
    auto psi = states::flat_oscillator_state(params, units, c);
    double gap = bound_gap(psi);
    CheckResult ck;
    ck.name = "generalized bound holds, flat n=" + std::to_string(n);
    ck.expected = 0.0;
    ck.actual = gap;
    ck.tolerance = 1e-9;
    ck.pass = gap >= -1e-9;
    out.push_back(ck);
  }
  for (int j : {1, 2, 3}) {
    states::OscillatorAdS2GroundParams params;
    params.j = j;
    auto psi = states::ads2_ground_state(params, units, c);
    double gap = bound_gap(psi);
    CheckResult ck;
    ck.name = "generalized bound holds, ads2 j=" + std::to_string(j);
    ck.expected = 0.0;
    ck.actual = gap;
    ck.tolerance = 1e-9;
    ck.pass = gap >= -1e-9;
    out.push_back(ck);
  }
  return out;
}

std::vector<CheckResult> check_flat_n1_violation(const quad::Config& cfg, double perturb) {
  geom::Units units;
  quad::Config c = tighten(cfg, 1e-9);
  states::OscillatorFlatParams params;
  params.n = 1;
  auto psi = states::flat_oscillator_state(params, units, c);
  auto w = wigner::wigner_flat_closed(params, units);
  auto hx = entropy::position_entropy(psi, c);
  auto hp = entropy::momentum_entropy(psi, c);
  auto hxp = entropy::phase_space_entropy(w, c);
  double defect = hx.value + hp.value - (hxp.value + perturb);
  return {make_check("flat n=1: H_X + H_P - H_XP = -2 + log4 - (2/sqrt e)Ei(1/2) + 2 gamma",
                     flat_n1_defect(), defect, 1e-4)};
}

std::vector<CheckResult> check_ads2_decomposition(const quad::Config& cfg, double perturb) {
  std::vector<CheckResult> out;
  geom::Units units;
  quad::Config c = tighten(cfg, 1e-9);
  double R = 1.0;
  states::OscillatorAdS2GroundParams params;  // j = 1
  params.radius = R;
  auto psi = states::ads2_ground_state(params, units, c);
  auto w = wigner::wigner_ads2_j1(R, units);
  auto hx = entropy::position_entropy(psi, c);
  auto hp = entropy::momentum_entropy(psi, c);
  auto hxp = entropy::phase_space_entropy(w, c);
  auto t = entropy::metric_log_volume_term(psi, c);
  double log_term = std::log(2.0 * specfun::kPi * R / units.planck_length);
  out.push_back(make_check("ads2 j=1: H_X = -3/2 + log2 + log(2 pi R / l_P)",
                           -1.5 + specfun::kLog2 + log_term, hx.value, 1e-6));
  out.push_back(make_check("ads2 j=1: H_P = 1/2 + log2 - log(2 pi R / l_P)",
                           0.5 + specfun::kLog2 - log_term, hp.value, 1e-6));
  out.push_back(make_check("ads2 j=1: H_XP = H_X + H_P + (1/2) int rho log gamma",
                           hx.value + hp.value + t.value, hxp.value + perturb, 1e-6));
  return out;
}

std::vector<CheckResult> check_ads2_level_trend(const quad::Config& cfg, double perturb) {
  std::vector<CheckResult> out;
  geom::Units units;
  quad::Config c = tighten(cfg, 1e-8);
  double prev = -1e9;
  for (int j = 1; j <= 8; ++j) {
    states::OscillatorAdS2GroundParams params;
    params.j = j;
    auto psi = states::ads2_ground_state(params, units, c);
    auto w = (j == 1) ? wigner::wigner_ads2_j1(1.0, units)
                      : wigner::wigner_ads2_residue(j, 1.0, units);
    auto hxp = entropy::phase_space_entropy(w, c);
    auto hx = entropy::position_entropy(psi, c);
    auto hp = entropy::momentum_entropy(psi, c);
    auto t = entropy::metric_log_volume_term(psi, c);
    double h = hxp.value + perturb;
    CheckResult inc;
    inc.name = "ads2 trend: H_XP(j=" + std::to_string(j) + ") above previous level";
    inc.expected = prev;
    inc.actual = h;
    inc.tolerance = 0.0;
    inc.pass = h > prev;
    out.push_back(inc);
    CheckResult below;
    below.name = "ads2 trend: H_XP(j=" + std::to_string(j) + ") below 1 - log 2";
    below.expected = kOneMinusLog2;
    below.actual = h;
    below.tolerance = 0.0;
    below.pass = h < kOneMinusLog2;
    out.push_back(below);
    double rhs = hx.value + hp.value + t.value;
    CheckResult conj;
    conj.name = "ads2 conjectured bound holds at j=" + std::to_string(j);
    conj.expected = rhs;
    conj.actual = h;
    conj.tolerance = 2e-6;
    conj.pass = h >= rhs - 2e-6;
    out.push_back(conj);
    prev = h;
  }
  return out;
}

std::vector<CheckResult> check_invariance_suite(const quad::Config& cfg) {
  std::vector<CheckResult> out;
  geom::Units units;
  quad::Config c1d = tighten(cfg, 1e-9);
  quad::Config c2d = tighten(cfg, 2e-7);

  struct Case {
    std::string name;
    states::LambdaWavefunction psi;
    wigner::WignerFunction w;
  };
  std::vector<Case> cases;
  {
    states::OscillatorFlatParams params;  // n = 0
    auto psi = states::flat_oscillator_state(params, units, c1d);
    cases.push_back({"flat n=0", psi, wigner::wigner_flat_closed(params, units)});
  }
  {
    states::OscillatorAdS2GroundParams params;  // j = 1
    auto psi = states::ads2_ground_state(params, units, c1d);
    cases.push_back({"ads2 j=1", psi, wigner::wigner_ads2_j1(1.0, units)});
  }

  for (const auto& cs : cases) {
    auto hx0 = entropy::position_entropy(cs.psi, c1d);
    auto hp0 = entropy::momentum_entropy(cs.psi, c1d);
    auto hxp0 = entropy::phase_space_entropy(cs.w, c2d);
    auto hx_leb0 = entropy::position_entropy_lebesgue(cs.psi, c1d);

    for (const auto& d :
         {geom::scaling_diffeomorphism(2.0), geom::sinh_diffeomorphism()}) {
      auto repar = states::reparametrize_state(cs.psi, d, c1d);
      auto hx1 = entropy::position_entropy(repar, c1d);
      auto hp1 = entropy::momentum_entropy(repar, c1d);
      auto w1 = wigner::wigner_numeric(repar, c2d);
      auto hxp1 = entropy::phase_space_entropy(w1, c2d);
      auto hx_leb1 = entropy::position_entropy_lebesgue(repar, c1d);
      std::string tag = cs.name + " under " + d.label;
      out.push_back(make_check("H_X invariant: " + tag, hx0.value, hx1.value, 1e-6));
      out.push_back(make_check("H_P invariant: " + tag, hp0.value, hp1.value, 1e-6));
      out.push_back(make_check("H_XP invariant: " + tag, hxp0.value, hxp1.value, 1e-6));
      // Lebesgue entropy shift: H_x = H_y + int rho_y log J dy
      auto fwd = d.forward;
      auto der = d.derivative;
      auto rp = repar;
      auto shift = quad::integrate_real_line(
          [rp, der](double y) {
            double rho = rp.density(y);
            return rho == 0.0 ? 0.0 : rho * std::log(der(y));
          },
          c1d);
      out.push_back(make_check("H_x shift equals E[log J]: " + tag, hx_leb0.value,
                               hx_leb1.value + shift.value, 1e-8));
      (void)fwd;
    }
  }
  return out;
}

std::vector<CheckResult> check_quasientropy_properties() {
  std::vector<CheckResult> out;
  // chain rule on 100 deterministic pseudo-random quasi-joints
  unsigned long long seed = 0x2545F4914F6CDD1DULL;
  auto next_uniform = [&seed]() {
    seed ^= seed << 13;
    seed ^= seed >> 7;
    seed ^= seed << 17;
    return double(seed % 1000000007ULL) / 1000000007.0;
  };
  double worst = 0.0;
  int used = 0;
  while (used < 100) {
    int rows = 2 + int(next_uniform() * 3.0);
    int cols = 2 + int(next_uniform() * 3.0);
    Eigen::MatrixXd joint(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) joint(i, k) = -1.0 + 3.0 * next_uniform();
    joint /= joint.sum();
    bool marginal_ok = std::abs(joint.sum() - 1.0) < 1e-12;
    for (int k = 0; k < cols && marginal_ok; ++k)
      marginal_ok = std::abs(joint.col(k).sum()) > 1e-3;
    if (!marginal_ok) continue;
    auto chk = entropy::quasientropy_chain_check(joint);
    worst = std::max(worst, std::abs(chk.defect));
    ++used;
  }
  out.push_back(make_check("chain-rule defect over 100 random quasi-joints", 0.0, worst,
                           1e-12));
  auto curve_value = [](double p) {
    double h = 0.0;
    for (double w : {p, 1.0 - p})
      if (w != 0.0) h -= w * std::log(std::abs(w));
    return h;
  };
  out.push_back(make_check("two-state curve at p=0", 0.0, curve_value(0.0), 1e-15));
  out.push_back(
      make_check("two-state curve at p=1/2", specfun::kLog2, curve_value(0.5), 1e-15));
  out.push_back(make_check("two-state curve at p=1", 0.0, curve_value(1.0), 1e-15));
  return out;
}

std::vector<CheckResult> check_hamiltonian_residuals() {
  std::vector<CheckResult> out;
  geom::Units units;
  states::ResidualGrid grid;  // [-5, 5], 2001 points
  for (int n = 0; n <= 3; ++n) {
    states::OscillatorFlatParams params;
    params.n = n;
    auto psi = states::flat_oscillator_state(params, units);
    double r = states::hamiltonian_residual(psi, params, grid);
    CheckResult ck;
    ck.name = "eigenstate residual, flat n=" + std::to_string(n);
    ck.expected = 0.0;
    ck.actual = r;
    ck.tolerance = 1e-5;
    ck.pass = r < 1e-5;
    out.push_back(ck);
  }
  {
    states::OscillatorAdS2GroundParams params;  // j = 1, R = 1
    auto psi = states::ads2_ground_state(params, units);
    double r = states::hamiltonian_residual(psi, params, grid);
    CheckResult ck;
    ck.name = "eigenstate residual, ads2 j=1";
    ck.expected = 0.0;
    ck.actual = r;
    ck.tolerance = 1e-5;
    ck.pass = r < 1e-5;
    out.push_back(ck);
  }
  return out;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, const quad::Config& cfg,
                                          double perturb_entropy) {
  std::vector<CheckResult> out;
  auto append = [&out](std::vector<CheckResult> v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  bool all = suite == "all";
  if (!(all || suite == "bounds" || suite == "marginals" || suite == "closedforms"))
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
  if (all || suite == "closedforms") {
    append(check_flat_ground(cfg));
    append(check_flat_first_excited(cfg));
    append(check_flat_closed_vs_quadrature(5, cfg));
    append(check_appendix_identity(5, cfg));
    append(check_footnote_integral(cfg));
    append(check_residue_formula(cfg));
  }
  if (all || suite == "marginals") {
    append(check_ads2_marginals(cfg));
    append(check_normalizations(cfg));
  }
  if (all || suite == "bounds") {
    append(check_bbm_bounds(cfg, perturb_entropy));
    append(check_flat_n1_violation(cfg, perturb_entropy));
    append(check_ads2_decomposition(cfg, perturb_entropy));
    append(check_ads2_units_independence(cfg));
    append(check_ads2_level_trend(cfg, perturb_entropy));
  }
  return out;
}

std::string checks_to_json(const RunConfig& rc, const std::vector<CheckResult>& checks) {
  json j;
  j["schema_version"] = 1;
  j["config"] = config_json(rc);
  json rows = json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    rows.push_back({{"check", c.name},
                    {"expected", c.expected},
                    {"actual", c.actual},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  j["rows"] = rows;
  j["all_pass"] = all_pass;
  j["provenance"] = {"suite: " + rc.suite, "units: hbar=1, l_P=1, h=2*pi",
                     "abs_tol: " + fmt(rc.tol)};
  return j.dump(2);
}

int run_command(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  quad::Config cfg;
  cfg.abs_tol = rc.tol;
  cfg.rel_tol = rc.tol;
  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!rc.out_path.empty()) {
      file.open(rc.out_path);
      if (!file) {
        err << "cannot open output path: " << rc.out_path << "\n";
        return 2;
      }
      sink = &file;
    }
    if (rc.command == "verify") {
      auto checks = run_verify_suite(rc.suite, cfg, rc.perturb_entropy);
      *sink << checks_to_json(rc, checks) << "\n";
      for (const auto& c : checks)
        if (!c.pass) return 1;
      return 0;
    }
    FigureTable t;
    if (rc.command == "quasientropy-curve")
      t = cmd_quasientropy_curve(rc.p_min, rc.p_max, rc.steps);
    else if (rc.command == "flat-levels")
      t = cmd_flat_levels(rc.n_max, rc.alpha, cfg);
    else if (rc.command == "ads2-levels")
      t = cmd_ads2_levels(rc.j_max, rc.radius, cfg);
    else if (rc.command == "wigner-grid")
      t = cmd_wigner_grid(rc, cfg);
    else {
      err << "unknown command: " << rc.command << "\n";
      return 2;
    }
    if (rc.format == Format::csv)
      write_csv(t, *sink);
    else
      write_json(t, rc, *sink);
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cwig::report
