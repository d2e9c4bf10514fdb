#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cwig/geometry.hpp"
#include "cwig/quadrature.hpp"
#include "cwig/states.hpp"

namespace cwig::wigner {

enum class Kind { numeric, flat_closed, ads2_j1, ads2_residue, mixed };

/// Real-valued Wigner quasiprobability evaluator (x, p) -> rho(x, p),
/// normalized so (1/h) iint rho dx dp = 1 and |rho| <= 2 for pure states
/// at hbar = 1 scaling.
struct WignerFunction {
  std::function<double(double, double)> eval;
  Kind kind = Kind::numeric;
  std::string source_label;
  std::map<std::string, double> params;
  geom::Units units;

  // Oscillation hints for the integration engines: half-period of the
  // p-oscillation at fixed x and of the x-oscillation at fixed p. Empty
  // when the kind does not oscillate (flat eigenstates).
  std::function<double(double)> p_half_period;
  std::function<double(double)> x_half_period;
  // e^{-rate |p|} envelope of the p-decay; 0 means faster-than-exponential.
  double p_decay_rate = 0.0;
  double x_width_hint = 1.0;
  double p_width_hint = 1.0;

  // filled for Kind::mixed so entropy reductions can see the components
  std::shared_ptr<const std::vector<std::pair<double, WignerFunction>>> components;

  double operator()(double x, double p) const { return eval(x, p); }
};

/// Closed-form evaluator for the AdS2 ground-state Wigner function at any
/// integer j >= 1, assembled from the contour residues. Two branches: a
/// direct pole-separated sum away from x = 0, and a merged-pole power
/// series in x^2 near x = 0 where the separated form cancels
/// catastrophically. Binomials and factorials are carried exactly.
class Ads2WignerEngine {
 public:
  Ads2WignerEngine(int j, double radius, geom::Units units);

  double operator()(double x, double p) const;

  /// Precomputed t-dependence at fixed x; t = |p| / hbar.
  struct Slice {
    bool series = false;
    Eigen::ArrayXcd q;  // direct branch: rho = amp e^{-2tR} Re[e^{2itx} sum q_s t^s]
    Eigen::ArrayXd e;   // series branch: rho = e^{-2tR} sum e_s t^s
    double x = 0.0;
  };
  Slice slice(double x) const;
  double eval_slice(const Slice& s, double t) const;

  /// Bound on int_0^inf |rho(x, t)| e^{+2tR} poly... used to short-circuit
  /// negligible outer-tail contributions: returns sum_s |coef_s| s! /(2R)^{s+1}.
  double slice_mass_bound(const Slice& s) const;

  int j() const { return j_; }
  double radius() const { return radius_; }
  const geom::Units& units() const { return units_; }
  double switch_radius() const { return x_switch_; }

 private:
  int j_;
  double radius_;
  geom::Units units_;
  double norm_;      // N = Gamma(2j) / (sqrt(pi) R Gamma(2j - 1/2))
  double amp_;       // 4 pi N R^{2j} (4R)^{2j}, direct-branch prefactor
  double series_amp_;  // 2 pi N R^{2j} (4R)^{2j}
  double x_switch_;
  // direct branch: integer binomial products per (l1, l2, l3)
  struct DirectTerm {
    int l1, l2, l3;
    double coeff;  // binom^3 / ((j-1-l3)! 4^{3j+l3})
  };
  std::vector<DirectTerm> direct_;
  // series branch: per (m, m') the t-polynomial coefficients, pre-scaled by
  // (-1)^{m+m'} 4^{m+m'} B_m B_m' (4R)^{l-(P+Q-1)} binom(Q-1,l)(P)_{Q-1-l}/(Q-1)!
  struct SeriesTerm {
    int total;  // m + m'
    Eigen::ArrayXd tpoly;
  };
  std::vector<SeriesTerm> series_;
  int series_max_total_ = 36;
};

/// Numeric curved-space Wigner transform of a lambda-wavefunction:
/// rho(x,p) = int psi(x - y/2) psi(x + y/2) e^{-ipy/hbar} dy. For the real
/// wavefunctions built here the integrand's odd part cancels identically,
/// so the transform is evaluated as a cosine integral (no imaginary part).
WignerFunction wigner_numeric(const states::LambdaWavefunction& psi,
                              const quad::Config& cfg = {});

/// Flat-oscillator closed form 2 (-1)^n L_n(2u) e^{-u},
/// u = alpha x^2 + p^2/(hbar^2 alpha).
WignerFunction wigner_flat_closed(const states::OscillatorFlatParams& params,
                                  const geom::Units& units = {});

/// AdS2 ground-state closed form at j = 1 (cos + (R/x) sin under an
/// exponential envelope); the x -> 0 singular factor is evaluated by a
/// 4-term Taylor series below |x| < 1e-4 R.
WignerFunction wigner_ads2_j1(double radius, const geom::Units& units = {});

/// General-j AdS2 ground-state Wigner function from the residue formula.
WignerFunction wigner_ads2_residue(int j, double radius, const geom::Units& units = {});

/// Convex combination of Wigner functions. Weights must lie in [0,1] and
/// sum to 1 within 1e-12.
WignerFunction wigner_mixed(const std::vector<std::pair<double, WignerFunction>>& components);

/// Position marginal rho_x(x) = (1/h) int rho(x,p) dp.
std::function<double(double)> marginal_position(const WignerFunction& w,
                                                const quad::Config& cfg = {});

/// Momentum marginal rho_p(p) = (1/h) int rho(x,p) dx.
std::function<double(double)> marginal_momentum(const WignerFunction& w,
                                                const quad::Config& cfg = {});

/// Rectangular sample of a Wigner function with bilinear interpolation.
/// A plotting convenience only: entropy quadrature always re-evaluates the
/// function exactly.
struct WignerGridCache {
  Eigen::ArrayXd x_nodes, p_nodes;
  Eigen::MatrixXd values;  // values(i, k) = rho(x_i, p_k)

  double operator()(double x, double p) const;
};

WignerGridCache make_grid_cache(const WignerFunction& w, double x_min, double x_max,
                                int nx, double p_min, double p_max, int np);

}  // namespace cwig::wigner
