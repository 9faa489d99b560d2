#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature for the radial integrals of the
// library. Panels are bisected globally by largest error until the requested
// tolerance is met or the panel budget runs out.
//
// Oscillatory integrands (sin(w r), cos(w r) factors) get initial panels no
// wider than pi / w. Semi-infinite integrals are hard-truncated at a caller
// supplied radius and the caller's analytic tail bound is folded into the
// error estimate.

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace logdamp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct QuadratureSpec {
  double lower = 0.0;
  double upper = 1.0;  // may be kInfinity, then `truncation` must be finite
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  // w such that the integrand contains sin(w r) or cos(w r); 0 = smooth.
  double oscillation_frequency = 0.0;
  std::size_t max_panels = std::size_t{1} << 20;
  // Interior points where the integrand changes scale; initial panels are
  // split there. Points outside (lower, end) are ignored.
  std::vector<double> breakpoints;
  // For upper == kInfinity: integration stops here and tail_bound (an upper
  // bound on the discarded integral) is added to the error estimate.
  double truncation = kInfinity;
  double tail_bound = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels_used = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Throws DomainError on an invalid spec and EvaluationError when the
/// integrand returns NaN or infinity (the exception carries the abscissa).
/// Running out of panels is not an error: the result has converged == false.
QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec);

/// Upper bound on the tail integral of (1+r^2)^{-t} r^p over [R, inf), R >= 1.
///
/// Substituting u = log(1+r^2) gives (1/2) int_U^inf e^{-(t-1)u} (e^u-1)^{(p-1)/2} du.
/// For r >= 1, (e^u - 1)^{(p-1)/2} <= max(1, e^{(p-1)u/2}), so with
/// q = max(1, (p+1)/2) the tail is at most (1+R^2)^{-(t-q)} / (2 (t-q)).
double truncation_tail_bound(double t, double p, double radius);

/// Smallest R >= 1 for which truncation_tail_bound(t, p, R) <= tail_tol.
/// Requires t > (p+1)/2 + 1 and t > 1.
double truncation_radius(double t, double p, double tail_tol);

/// Upper bound on int_rho^inf (1+r^2)^{-t} r^p dr for rho > 0. Below 1 this
/// combines the monotone bound (1+rho^2)^{-t} max(rho^p, 1) (1 - rho) on
/// [rho, 1] with truncation_tail_bound(t, p, 1) on [1, inf); from 1 on it is
/// truncation_tail_bound itself.
double support_tail_bound(double t, double p, double rho);

/// Radius beyond which (1+r^2)^{-t} r^p carries at most tail_tol of mass.
/// Unlike truncation_radius this may be below 1, which keeps oscillatory
/// integrals at large t from panelling dead space. Same preconditions.
double support_radius(double t, double p, double tail_tol);

/// Points s/4, s/2, s, 2s, 4s, ... (s = 1/sqrt(t)) below `limit`, marking the
/// width of (1+r^2)^{-t}. Empty for t <= 1.
std::vector<double> damping_breakpoints(double t, double limit);

}  // namespace logdamp
