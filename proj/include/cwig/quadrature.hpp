#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace cwig::quad {

/// Tolerances and refinement limits for the double-exponential rules.
struct Config {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int max_level = 12;  // tanh-sinh refinement depth, clamped to [3, 15]
  long max_evals = 4000000;
};

/// Outcome of one integration. Non-convergence is reported, never thrown.
struct Result {
  double value = 0.0;
  double error_estimate = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  bool converged = false;
};

using Fn = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// 1D interval with +-infinity allowed as endpoints.
struct Domain {
  double lo;
  double hi;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tanh-sinh rule on a finite interval [a, b]. Endpoint singularities are
/// absorbed by the double-exponential map; the endpoints are never evaluated.
Result tanhsinh_finite(const Fn& f, double a, double b, const Config& cfg);

/// Integral over [a, inf) via an exp-type change of variable composed with
/// the same double-exponential refinement engine. f must decay at infinity.
Result integrate_semi_infinite(const Fn& f, double a, const Config& cfg);

/// Integral over the real line, split at 0 into two semi-infinite halves.
Result integrate_real_line(const Fn& f, const Config& cfg);

/// Dispatch on the domain type (finite / semi-infinite / real line).
Result integrate_1d(const Fn& f, Domain d, const Config& cfg);

/// Like integrate_1d, but integrating each panel between the supplied
/// interior breakpoints separately. Breakpoints outside the domain are
/// ignored. Intended for integrands with known interior kinks or
/// logarithmic singularities (e.g. zero crossings of a quasiprobability
/// density), which tanh-sinh handles only at panel endpoints.
Result integrate_1d_split(const Fn& f, Domain d, std::vector<double> breakpoints,
                          const Config& cfg);

/// Iterated 2D integral, inner in p, outer in x. Per-axis tolerances are
/// tightened by a factor 10 relative to cfg.
Result integrate_2d(const Fn2& f, Domain x_dom, Domain p_dom, const Config& cfg);

/// 2D variant with interior breakpoints: x_breaks splits the outer axis,
/// p_breaks(x) supplies inner-axis breakpoints for each outer abscissa.
Result integrate_2d(const Fn2& f, Domain x_dom, Domain p_dom, const Config& cfg,
                    const std::vector<double>& x_breaks,
                    const std::function<std::vector<double>(double)>& p_breaks);

/// Semi-infinite integral of an integrand that oscillates with a fixed
/// half-period and decays only algebraically (Fourier tails of slowly
/// decaying densities). [a, a + smooth_width) is integrated panel-by-panel
/// at the half-period; beyond that the alternating panel series is summed
/// by iterated averaging (Euler transform), which converges geometrically
/// where plain truncation would need astronomically distant cutoffs.
/// Falls back to integrate_semi_infinite when half_period is not positive
/// and finite.
Result oscillatory_semi_infinite(const Fn& f, double a, double half_period,
                                 double smooth_width, const Config& cfg);

/// Scan [a, b] at the given step and bisect every bracketed sign change.
/// Returns the located zeros in ascending order.
std::vector<double> find_sign_changes(const Fn& f, double a, double b, double step);

}  // namespace cwig::quad
