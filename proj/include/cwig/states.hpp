#pragma once

#include <complex>
#include <functional>
#include <string>

#include "cwig/geometry.hpp"
#include "cwig/quadrature.hpp"
#include "cwig/spline.hpp"

namespace cwig::states {

/// Harmonic-oscillator eigenstate parameters in flat space. Only the
/// combination alpha = sqrt(kappa m)/hbar enters the state itself.
struct OscillatorFlatParams {
  int n = 0;
  double mass = 1.0;
  double coupling = 1.0;  // kappa

  double alpha(const geom::Units& u) const;
  double energy(const geom::Units& u) const;  // hbar sqrt(kappa/m) (n + 1/2)
};

/// Ground state of the oscillator on the AdS2 spatial slice. The
/// single-valuedness constraint fixes 1/Lambda = 2j - 1/2 and ties the
/// product m*kappa to (j, R); m and kappa are never needed individually.
/// Energies are quoted for m = 1 (only m*kappa is physical here).
struct OscillatorAdS2GroundParams {
  int j = 1;
  double radius = 1.0;

  double lambda_inverse() const { return 2.0 * j - 0.5; }
  double lambda() const { return 1.0 / lambda_inverse(); }
  /// N = Gamma(1/Lambda + 1/2) / (sqrt(pi) R Gamma(1/Lambda))
  double normalization() const;
  /// m kappa = (4 hbar^2/R^4)(j + 1/4)(j - 1/4)
  double mass_coupling_product(const geom::Units& u) const;
  /// E0 = hbar^2 / (2 m R^2 Lambda)
  double ground_energy(const geom::Units& u, double mass = 1.0) const;
};

/// Real-valued lambda-wavefunction x -> psi(x), normalized with respect to
/// the Lebesgue measure of its chart.
struct LambdaWavefunction {
  std::function<double(double)> eval;
  geom::Metric1D metric;
  geom::Units units;
  std::string label;
  double normalization_check = 0.0;  // cached value of the norm integral
  double width_hint = 1.0;           // characteristic spatial scale

  double operator()(double x) const { return eval(x); }
  /// Lebesgue-measure position density |psi(x)|^2.
  double density(double x) const {
    double v = eval(x);
    return v * v;
  }
  /// Riemannian-measure density l_P |psi|^2 / sqrt(g); chart-invariant.
  double invariant_density(double x) const;
};

/// Momentum wavefunction psi_p(p) = h^{-1/2} int e^{-ipx/hbar} psi(x) dx,
/// cached on a grid with cubic-spline interpolation (the entropy integrals
/// re-evaluate it many times). Hermitian symmetry psi_p(-p) = conj(psi_p(p))
/// holds for the real lambda-wavefunctions built here.
struct MomentumWavefunction {
  CubicSpline re, im;
  double p_max = 0.0;
  geom::Units units;
  std::string parent_label;
  double normalization_check = 0.0;

  std::complex<double> operator()(double p) const;
  double density(double p) const {  // |psi_p|^2
    auto v = (*this)(p);
    return std::norm(v);
  }
};

LambdaWavefunction flat_oscillator_state(const OscillatorFlatParams& params,
                                         const geom::Units& units = {},
                                         const quad::Config& cfg = {});

/// AdS2 ground state; evaluates the exponent as 1/(2 Lambda) + 1/4 and
/// checks it equals j to machine precision. Throws std::domain_error for
/// j < 1 and std::logic_error if the exponent identity fails.
LambdaWavefunction ads2_ground_state(const OscillatorAdS2GroundParams& params,
                                     const geom::Units& units = {},
                                     const quad::Config& cfg = {});

MomentumWavefunction momentum_representation(const LambdaWavefunction& psi,
                                             const quad::Config& cfg = {});

struct ResidualGrid {
  double x_min = -5.0;
  double x_max = 5.0;
  int n_points = 2001;
};

/// Max relative residual of H psi = E psi evaluated with 5-point finite
/// differences on the ordinary wavefunction psi = g^{-1/4} psi_lambda.
/// Throws std::runtime_error when a half-resolution rerun shows the grid is
/// too coarse to trust the answer.
double hamiltonian_residual(const LambdaWavefunction& psi,
                            const OscillatorFlatParams& params, const ResidualGrid& grid);
double hamiltonian_residual(const LambdaWavefunction& psi,
                            const OscillatorAdS2GroundParams& params,
                            const ResidualGrid& grid);

/// Passive chart change: psi'(y) = psi(f(y)) sqrt(f'(y)) over the
/// pulled-back metric. Lebesgue normalization is preserved.
LambdaWavefunction reparametrize_state(const LambdaWavefunction& psi,
                                       const geom::Diffeomorphism& d,
                                       const quad::Config& cfg = {});

}  // namespace cwig::states
