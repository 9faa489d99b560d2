#pragma once

// Radial moments of the damping kernel (1+r^2)^{-t}:
//
//   lower moment  I_p(t) = int_0^1   (1+r^2)^{-t} r^p dr   ~ t^{-(p+1)/2}
//   upper moment  J_p(t) = int_1^inf (1+r^2)^{-t} r^p dr   ~ 2^{-t} / (t-1)
//
// together with the hypergeometric slice 2F1(t, (p+1)/2; (p+3)/2; -1) =
// (p+1) I_p(t), the ratio Gamma(t-1/2)/Gamma(t) and the half-line integral
// H_0(t) = I_0(t) + J_0(t) = (sqrt(pi)/2) Gamma(t-1/2)/Gamma(t).
//
// t is a continuous real parameter throughout.

#include <span>
#include <vector>

namespace logdamp {

/// I_p(t). Requires p >= 0 and finite t. Relative accuracy ~1e-12.
double lower_moment(double t, double p);

/// J_p(t) through u = log(1+r^2). Requires t > (p+3)/2.
/// Underflows to 0 for very large t; use upper_moment_scaled there.
double upper_moment(double t, double p);

/// J_p(t) (t-1) 2^t, evaluated without forming 2^{-t}. Same preconditions.
double upper_moment_scaled(double t, double p);

/// J_p(t) by direct quadrature on [1, R] with R chosen from the bound
/// (1+r^2)^{-t} <= r^{-2t}; valid for any t > (p+1)/2 (e.g. J_0(1) = pi/4).
/// The truncated tail is below 1e-13 of the result's scale.
double upper_moment_direct(double t, double p);

/// One step of the integration-by-parts recurrence
/// I_p = 2^{1-t}/(p+1-2t) + (p-1)/(2t-p-1) I_{p-2}. Requires p >= 2, t > (p+1)/2.
double lower_moment_recurrence(double t, double p, double lower_moment_pm2);

/// 2F1(t, (p+1)/2; (p+3)/2; -1), only on this parameter slice.
double hyp2f1_slice(double t, double p);

/// Gamma(t - 1/2) / Gamma(t) for t > 1/2, from a log-gamma difference.
double gamma_ratio(double t);

/// H_0(t) = int_0^inf (1+r^2)^{-t} dr in closed form, t > 1/2.
double half_line_integral(double t);

/// int_eta^1 (1+r^2)^{-t} r^p dr for eta in (0, 1].
double middle_band(double eta, double p, double t);

/// Lower witness e^{-p/8} / 2^{p+2} (p/(2t-p))^{(p+1)/2} for I_p(t), p > 0.
double lower_moment_witness(double t, double p);

/// Two-sided bounds on J_p(t) (t-1) 2^t.
struct ScaledBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// The sandwich obtained from (e^u - 1)^{(p-1)/2} on u >= log 2:
///   p < 1:  2^{(p-1)/2}(t-1)/(t-(p+1)/2) <= . <= 1
///   p >= 1: 1 <= . <= 2^{(p-1)/2}(t-1)/(t-(p+1)/2)
ScaledBounds upper_moment_sandwich(double t, double p);

/// The tighter band using 2e^v - 1 >= e^v:
///   min(1, 2^{(p-1)/2}) c <= . <= max(1, 2^{(p-1)/2}) c,  c = (t-1)/(t-(p+1)/2).
ScaledBounds upper_moment_band(double t, double p);

/// Scaled sequence I_p(t) t^{(p+1)/2} on a grid, with its extent.
struct AsymptoticBandReport {
  double p = 0.0;
  std::vector<double> t_grid;
  std::vector<double> scaled_values;
  double band_min = 0.0;
  double band_max = 0.0;
  bool monotone_tail = false;  // scaled values monotone over the grid

  double variation() const { return band_max / band_min; }
};

AsymptoticBandReport lower_moment_band(double p, std::span<const double> t_grid);

}  // namespace logdamp
