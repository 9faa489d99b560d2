#pragma once

// Spectral L2 quantities of the mode solution, all computed radially through
// Plancherel:
//
//   ||f||^2 = (2 pi)^{-n} omega_n int_0^inf |f^(r)|^2 r^{n-1} dr,
//
// with omega_n the unit-sphere area (omega_1 = 2). Integrals over [0, inf) are
// truncated where an analytic envelope of the integrand drops below roundoff;
// the envelope's tail is added to the reported error.
//
// Also here: the radial integrals M(t), Q(t), R(t) of the damped profile and
// the least-squares decay-exponent fit.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "logdamp/modes.hpp"

namespace logdamp {

struct NormResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// ||u(t)||_{L^2}.
NormResult l2_norm(double t, const InitialData& data, Damping damping = Damping::logarithmic);

enum class Band { full, low, high };
enum class ResidualMethod { direct_difference, remainder_sum };

struct ResidualOptions {
  /// Low/high split radius; defaults to low_band_radius().
  double split = low_band_radius();
  Band band = Band::full;
  ResidualMethod method = ResidualMethod::direct_difference;
};

/// || u(t) - profile(t) || restricted to the chosen band of |xi|.
NormResult residual_norm(double t, const InitialData& data, const ResidualOptions& options = {});

/// E(t) = (1/2)(||u_t||^2 + ||grad u||^2).
NormResult energy(double t, const InitialData& data, Damping damping = Damping::logarithmic);

enum class ProfileWeight { sine, cosine };

/// M(t) = omega_n int_0^inf (1+r^2)^{-t} w(r) r^{n-1} dr with
/// w = sin^2(rt)/r^2 (needs n > 2) or cos^2(rt) (n >= 1). Requires t > 1.
double profile_moment(double t, int n, ProfileWeight weight);

/// Q(t) = int_0^inf (1+r^2)^{-t} sin^2(tr)/r^2 dr, t > 2.
double profile_integral_q(double t);

/// R(t) = int_0^inf (1+r^2)^{-t} sin^2(tr)/r dr, t > 2.
double profile_integral_r(double t);

/// (1/2) int_nu^nu' (1+r^2)^{-t} r^{-2} dr with nu = 5 pi/(4t), nu' = 7 pi/(4t):
/// sin^2(tr) >= 1/2 on that window, so this is a lower bound for Q(t).
double q_window_bound(double t);

/// (sin x / x)^2, by a six-term Taylor series for |x| < 1e-3.
double sinc_squared(double x);

struct DecaySeries {
  std::vector<double> t_grid;
  std::vector<double> values;
  std::string label;

  void validate() const;
};

struct DecayFitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_log_residual = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t points = 0;
};

/// Least-squares line through (log t, log value) for the points with
/// t_min <= t <= t_max. Throws DomainError with fewer than 5 points.
DecayFitResult fit_decay(const DecaySeries& series, double t_min, double t_max);
DecayFitResult fit_decay(const DecaySeries& series);

/// Finite-bandwidth radial spectral profile
///   v^(r) = sum_k c_k sin(k pi r / bandwidth)  on [0, bandwidth], 0 beyond.
struct SpectralProfile {
  double bandwidth = 1.0;
  std::vector<double> coefficients;
  int dimension = 1;

  double transform(double r) const;

  /// Deterministic draw: bandwidth log-uniform in [1e-2, 1e2], 1..8 modes with
  /// coefficients uniform in [-1, 1], dimension 1..3.
  static SpectralProfile random(std::uint64_t seed);
};

struct SpectralNorms {
  double plain = 0.0;        // ||v||
  double operator_a = 0.0;   // ||A v||, symbol r^2
  double operator_l = 0.0;   // ||L v||, symbol log(1+r^2)
};

SpectralNorms spectral_norms(const SpectralProfile& profile);

}  // namespace logdamp
