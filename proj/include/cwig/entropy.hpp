#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cwig/quadrature.hpp"
#include "cwig/states.hpp"
#include "cwig/wigner.hpp"

namespace cwig::entropy {

/// Finite list of real quasiprobability weights summing to 1 (within 1e-12);
/// individual weights may be negative or exceed 1.
struct QuasiDistribution {
  Eigen::ArrayXd weights;
};

/// Quasientropy H~ = -sum p log|p| with 0 log 0 = 0. Reduces to Shannon's
/// entropy when all weights lie in [0, 1]; can be negative otherwise.
/// Throws std::invalid_argument when the weights do not sum to 1.
double quasientropy_discrete(const QuasiDistribution& q);

/// A conditional quasientropy is undefined when a marginal vanishes.
struct ZeroMarginalError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ChainRuleCheck {
  double lhs;     // H~(X, Y)
  double rhs;     // H~(Y) + sum_j p(y_j) H~(X | Y = y_j)
  double defect;  // lhs - rhs
};

/// Chain rule H~(X,Y) = H~(Y) + sum_j p(y_j) H~(X|Y=y_j) on a joint
/// quasiprobability matrix joint(i, j) = p(x_i, y_j). Throws
/// ZeroMarginalError when some column marginal p(y_j) vanishes.
ChainRuleCheck quasientropy_chain_check(const Eigen::MatrixXd& joint);

/// A quadrature-backed entropy value; non-convergence is reported, not thrown.
struct EntropyValue {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Phase-space entropy H_{X,P} = -(1/h) iint rho log|rho| dx dp, with the
/// integrand set to 0 at zeros of rho. Dispatches per Wigner kind: flat
/// eigenstates (and mixtures at common alpha) reduce to a radial integral
/// over u = alpha x^2 + p^2/(hbar^2 alpha); AdS2 kinds integrate the damped
/// oscillatory slices with panels split at the sign changes of rho.
EntropyValue phase_space_entropy(const wigner::WignerFunction& w, const quad::Config& cfg = {});

/// Full 2D iterated-quadrature route, kept independent of the reductions
/// above as an oracle (and used where no reduction applies).
EntropyValue phase_space_entropy_2d(const wigner::WignerFunction& w,
                                    const quad::Config& cfg = {});

/// Closed-form phase-space entropy of the flat oscillator level n: the
/// exponential-integral sum over Laguerre roots. Dimensionless (independent
/// of hbar, l_P, mass and coupling). Accumulated in extended precision; the
/// alternating sum loses roughly one digit per level beyond n ~ 10.
double flat_entropy_closed_form(int n);

/// Closed form of int_0^inf e^{-r^2} L_n(2r^2) log|L_n(2r^2)| r dr for
/// n >= 1 from the same root/exponential-integral machinery.
double appendix_integral(int n);

/// Invariant position entropy H_X = -int rho_x log(l_P rho_x / sqrt g) dx.
EntropyValue position_entropy(const states::LambdaWavefunction& psi,
                              const quad::Config& cfg = {});

/// Chart-dependent Lebesgue position entropy H_x = -int rho_x log rho_x dx.
EntropyValue position_entropy_lebesgue(const states::LambdaWavefunction& psi,
                                       const quad::Config& cfg = {});

/// int rho_x log sqrt(g) dx  (the metric volume-log moment).
EntropyValue metric_log_volume_term(const states::LambdaWavefunction& psi,
                                    const quad::Config& cfg = {});

/// Invariant momentum entropy H_P = H_p - int rho_x log[(h/l_P) sqrt g] dx.
EntropyValue momentum_entropy(const states::LambdaWavefunction& psi,
                              const quad::Config& cfg = {});
EntropyValue momentum_entropy(const states::LambdaWavefunction& psi,
                              const states::MomentumWavefunction& mom,
                              const quad::Config& cfg = {});

/// Chart-dependent Lebesgue momentum entropy H_p = -int rho_p log rho_p dp.
EntropyValue momentum_entropy_lebesgue(const states::MomentumWavefunction& mom,
                                       const quad::Config& cfg = {});

/// Entropies of one state/Wigner pair plus the uncertainty-bound data.
struct EntropyReport {
  double h_phase_space = 0.0;
  double h_position = 0.0;
  double h_momentum = 0.0;
  double mutual_info_defect = 0.0;     // H_X + H_P - H_{X,P}
  double bbm_bound = 0.0;              // D (1 - log 2)
  double conjectured_bound_rhs = 0.0;  // H_X + H_P + int rho_x log sqrt(g)
  double metric_log_volume_term = 0.0;
  int dimension = 1;
  std::string state_label;
  double hbar = 1.0;
  double planck_length = 1.0;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  double err_phase_space = 0.0;
  double err_position = 0.0;
  double err_momentum = 0.0;
  long evaluations = 0;
  bool converged = true;
};

EntropyReport bound_report(const states::LambdaWavefunction& psi,
                           const wigner::WignerFunction& w, const quad::Config& cfg = {});

struct MixedEntropyTotals {
  double h_von_neumann = 0.0;
  double h_total = 0.0;  // H_vN + sum_a p_a H^{(a)}
};

/// Total entropy of a mixed state from its ensemble probabilities and the
/// components' phase-space entropies. Probabilities must lie in [0,1] and
/// sum to 1 (throws std::invalid_argument otherwise).
MixedEntropyTotals total_entropy_mixed(const std::vector<double>& probs,
                                       const std::vector<double>& component_entropies);

/// Mutual information between the ensemble label and the microscopic
/// degrees of freedom: I = H_{X,P}(mixed) - sum_a p_a H_{X,P}^{(a)}.
EntropyValue ensemble_mutual_information(const wigner::WignerFunction& mixed,
                                         const std::vector<double>& probs,
                                         const std::vector<wigner::WignerFunction>& components,
                                         const quad::Config& cfg = {});

/// The oscillatory-logarithm cross term of the j = 1 AdS2 phase-space
/// entropy, as a 2D integral over the first quadrant:
///   iint e^{-p}/(1+x^2) [cos(px) + sin(px)/x] log([cos(px)+sin(px)/x]^2)
/// Its value is pi/2 to better than 1e-9; evaluated by the iterated 2D rule
/// with panels split at the analytic zeros of the bracket.
quad::Result ads2_j1_log_cross_integral(const quad::Config& cfg = {});

}  // namespace cwig::entropy
