#include "logdamp/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "logdamp/errors.hpp"
#include "logdamp/quadrature.hpp"

namespace logdamp {
namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;

double require(const QuadratureResult& r, const char* what) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge (error estimate " +
                           std::to_string(r.error_estimate) + ")");
  }
  return r.value;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": arguments must be finite");
}

// Stirling correction sum_k B_2k / (2k (2k-1) y^{2k-1}); accurate to roundoff for y >= 9.5.
double stirling_tail(double y) {
  constexpr std::array<double, 8> c = {1.0 / 12.0,    -1.0 / 360.0,       1.0 / 1260.0,
                                       -1.0 / 1680.0, 1.0 / 1188.0,       -691.0 / 360360.0,
                                       1.0 / 156.0,   -3617.0 / 122400.0};
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  double sum = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    sum = sum * inv2 + *it;
  }
  return sum * inv;
}

}  // namespace

double lower_moment(double t, double p) {
  require_finite(t, "lower_moment");
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("lower_moment: need p >= 0");
  QuadratureSpec spec;
  spec.lower = 0.0;
  spec.upper = 1.0;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-13;
  spec.breakpoints = damping_breakpoints(t, 1.0);
  auto f = [t, p](double r) {
    const double kernel = std::exp(-t * std::log1p(r * r));
    return p == 0.0 ? kernel : kernel * std::pow(r, p);
  };
  return require(integrate(f, spec), "lower_moment");
}

double upper_moment_scaled(double t, double p) {
  require_finite(t, "upper_moment");
  require_finite(p, "upper_moment");
  if (!(t > 0.5 * (p + 3.0))) throw DomainError("upper_moment: need t > (p+3)/2");

  // J_p(t) (t-1) 2^t = (t-1) int_0^inf e^{-(t-1)v} (2e^v - 1)^{(p-1)/2} dv,  v = u - log 2.
  // Tail past V: p < 1 uses (2e^v-1)^{(p-1)/2} <= 1, p >= 1 uses <= 2^{(p-1)/2} e^{(p-1)v/2}.
  const double excess = p < 1.0 ? t - 1.0 : t - 0.5 * (p + 1.0);
  const double coef = p < 1.0 ? 1.0 : std::exp2(0.5 * (p - 1.0));
  const ScaledBounds band = upper_moment_band(t, p);
  const double target = 1e-17 * band.lower;
  auto tail = [&](double v) { return (t - 1.0) * coef * std::exp(-excess * v) / excess; };
  double cutoff = std::max(std::log((t - 1.0) * coef / (excess * target)) / excess, 1.0 / (t - 1.0));
  while (tail(cutoff) > target) cutoff *= 1.0 + 1e-9;

  QuadratureSpec spec;
  spec.lower = 0.0;
  spec.upper = kInfinity;
  spec.truncation = cutoff;
  spec.tail_bound = tail(cutoff) / (t - 1.0);
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-13;
  for (double v = 0.25 / (t - 1.0); v < cutoff; v *= 2.0) spec.breakpoints.push_back(v);
  const double half_p = 0.5 * (p - 1.0);
  auto f = [t, half_p](double v) {
    return std::exp(-(t - 1.0) * v + half_p * std::log1p(2.0 * std::expm1(v)));
  };
  return (t - 1.0) * require(integrate(f, spec), "upper_moment");
}

double upper_moment(double t, double p) {
  const double scaled = upper_moment_scaled(t, p);
  return std::exp(std::log(scaled) - t * kLn2 - std::log(t - 1.0));
}

double upper_moment_direct(double t, double p) {
  require_finite(t, "upper_moment_direct");
  require_finite(p, "upper_moment_direct");
  const double decay = 2.0 * t - p - 1.0;
  if (!(decay > 0.0)) throw DomainError("upper_moment_direct: need t > (p+1)/2");

  // J_p(t) >= int_1^2 >= 5^{-t} min(1, 2^p) sets the scale of the tail budget.
  const double scale = std::exp(-t * std::log(5.0)) * std::min(1.0, std::exp2(p));
  const double target = 1e-13 * scale;
  // int_R^inf (1+r^2)^{-t} r^p dr <= R^{-decay} / decay.
  double radius = std::max(2.0, std::pow(target * decay, -1.0 / decay));
  auto tail = [&](double R) { return std::pow(R, -decay) / decay; };
  while (tail(radius) > target) radius *= 1.0 + 1e-9;

  QuadratureSpec spec;
  spec.lower = 1.0;
  spec.upper = kInfinity;
  spec.truncation = radius;
  spec.tail_bound = tail(radius);
  spec.abs_tol = target;
  spec.rel_tol = 1e-12;
  if (t > 1.0) {
    for (double x = 0.25 / t; x < 1.0; x *= 2.0) spec.breakpoints.push_back(1.0 + x);
  }
  for (double x = 2.0; x < radius; x *= 2.0) spec.breakpoints.push_back(x);
  auto f = [t, p](double r) { return std::exp(-t * std::log1p(r * r) + p * std::log(r)); };
  return require(integrate(f, spec), "upper_moment_direct");
}

double lower_moment_recurrence(double t, double p, double lower_moment_pm2) {
  require_finite(t, "lower_moment_recurrence");
  if (!(p >= 2.0) || !std::isfinite(p)) throw DomainError("lower_moment_recurrence: need p >= 2");
  if (!(t > 0.5 * (p + 1.0))) throw DomainError("lower_moment_recurrence: need t > (p+1)/2");
  return std::exp2(1.0 - t) / (p + 1.0 - 2.0 * t) + (p - 1.0) / (2.0 * t - p - 1.0) * lower_moment_pm2;
}

double hyp2f1_slice(double t, double p) { return (p + 1.0) * lower_moment(t, p); }

double gamma_ratio(double t) {
  if (!(t > 0.5) || !std::isfinite(t)) throw DomainError("gamma_ratio: need finite t > 1/2");
  // Gamma(x-1/2)/Gamma(x) = x/(x-1/2) * Gamma(x+1/2)/Gamma(x+1): shift up until Stirling applies.
  double x = t;
  double factor = 1.0;
  while (x < 10.0) {
    factor *= x / (x - 0.5);
    x += 1.0;
  }
  const double log_ratio = -0.5 * std::log(x) + (x - 1.0) * std::log1p(-0.5 / x) + 0.5 +
                           stirling_tail(x - 0.5) - stirling_tail(x);
  return factor * std::exp(log_ratio);
}

double half_line_integral(double t) { return 0.5 * std::sqrt(M_PI) * gamma_ratio(t); }

double middle_band(double eta, double p, double t) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("middle_band: need eta in (0, 1]");
  require_finite(p, "middle_band");
  require_finite(t, "middle_band");
  if (eta == 1.0) return 0.0;
  QuadratureSpec spec;
  spec.lower = eta;
  spec.upper = 1.0;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-12;
  spec.breakpoints = damping_breakpoints(t, 1.0);
  auto f = [t, p](double r) { return std::exp(-t * std::log1p(r * r) + p * std::log(r)); };
  return require(integrate(f, spec), "middle_band");
}

double lower_moment_witness(double t, double p) {
  if (!(p > 0.0) || !(t > 0.5 * p)) throw DomainError("lower_moment_witness: need p > 0, t > p/2");
  return std::exp(-p / 8.0) / std::exp2(p + 2.0) * std::pow(p / (2.0 * t - p), 0.5 * (p + 1.0));
}

ScaledBounds upper_moment_sandwich(double t, double p) {
  if (!(t > std::max(1.0, 0.5 * (p + 1.0)))) {
    throw DomainError("upper_moment_sandwich: need t > max(1, (p+1)/2)");
  }
  const double c = (t - 1.0) / (t - 0.5 * (p + 1.0));
  const double k = std::exp2(0.5 * (p - 1.0));
  if (p < 1.0) return {k * c, 1.0};
  return {1.0, k * c};
}

ScaledBounds upper_moment_band(double t, double p) {
  if (!(t > std::max(1.0, 0.5 * (p + 1.0)))) {
    throw DomainError("upper_moment_band: need t > max(1, (p+1)/2)");
  }
  const double c = (t - 1.0) / (t - 0.5 * (p + 1.0));
  const double k = std::exp2(0.5 * (p - 1.0));
  return {std::min(1.0, k) * c, std::max(1.0, k) * c};
}

AsymptoticBandReport lower_moment_band(double p, std::span<const double> t_grid) {
  AsymptoticBandReport report;
  report.p = p;
  report.t_grid.assign(t_grid.begin(), t_grid.end());
  if (report.t_grid.empty()) throw DomainError("lower_moment_band: empty grid");
  if (!std::is_sorted(report.t_grid.begin(), report.t_grid.end()) ||
      std::adjacent_find(report.t_grid.begin(), report.t_grid.end()) != report.t_grid.end()) {
    throw DomainError("lower_moment_band: grid must be strictly increasing");
  }
  for (double t : report.t_grid) {
    report.scaled_values.push_back(lower_moment(t, p) * std::pow(t, 0.5 * (p + 1.0)));
  }
  const auto [lo, hi] = std::minmax_element(report.scaled_values.begin(), report.scaled_values.end());
  report.band_min = *lo;
  report.band_max = *hi;
  const auto& v = report.scaled_values;
  report.monotone_tail = std::is_sorted(v.begin(), v.end()) || std::is_sorted(v.rbegin(), v.rend());
  return report;
}

}  // namespace logdamp
