#include "logdamp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "logdamp/errors.hpp"
#include "logdamp/quadrature.hpp"

namespace logdamp {
namespace {

// b/r = sqrt(1 - g) >= sqrt(1 - 0.162) > 0.915, so 1/b <= 1.1/r; a/b <= 1/sqrt(3) < 0.58.
constexpr double kInverseRootFactor = 1.1;
constexpr double kDampingRatio = 0.58;

// One term coef * exp(-rate r^2) * r^power of a pointwise bound on |f^(r)| / (1+r^2)^{-t/2}.
struct EnvelopeTerm {
  double coef;
  double rate;
  double power;
};

class Envelope {
 public:
  Envelope(double decay_exponent, int dimension) : t_(decay_exponent), n_(dimension) {}

  void add(double coef, double rate, double power) {
    if (coef != 0.0) terms_.push_back({std::abs(coef), rate, power});
  }
  bool empty() const { return terms_.empty(); }

  double scale() const {
    double s = 0.0;
    for (const auto& term : terms_) s += term.coef * term.coef;
    return s;
  }

  // Bound on int_R^inf |f^|^2 r^{n-1} dr via (sum_j x_j)^2 <= N sum_j x_j^2.
  double tail(double radius) const {
    double total = 0.0;
    for (const auto& term : terms_) {
      const double m = 2.0 * term.power + n_ - 1.0;
      total += term.coef * term.coef * term_tail(2.0 * term.rate, m, radius);
    }
    return static_cast<double>(terms_.size()) * total;
  }

  // Smallest radius (to bisection accuracy) whose tail is below target; capped at kMaxRadius.
  double radius(double target) const {
    constexpr double kMinRadius = 1e-8;
    if (tail(kMaxRadius) > target) return kMaxRadius;
    if (tail(kMinRadius) <= target) return kMinRadius;
    double lo = std::log(kMinRadius);
    double hi = std::log(kMaxRadius);
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (tail(std::exp(mid)) <= target ? hi : lo) = mid;
    }
    return std::exp(hi);
  }

  static constexpr double kMaxRadius = 1e8;

 private:
  // int_R^inf (1+r^2)^{-t} e^{-c r^2} r^m dr.
  double term_tail(double c, double m, double radius) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (c > 0.0) {
      // Integration by parts: I <= R^{m-1} e^{-cR^2} / (2c) + (m-1)/(2cR^2) I.
      double shrink = 1.0;
      if (m > 1.0) {
        const double ratio = (m - 1.0) / (2.0 * c * radius * radius);
        if (ratio > 0.5) return inf;
        shrink = 1.0 - ratio;
      }
      const double log_bound = -t_ * std::log1p(radius * radius) + (m - 1.0) * std::log(radius) -
                               c * radius * radius - std::log(2.0 * c * shrink);
      return std::exp(log_bound);
    }
    // (1+r^2)^{-t} <= r^{-2t}.
    const double decay = 2.0 * t_ - m - 1.0;
    if (!(decay > 0.0)) return inf;
    return std::exp(-decay * std::log(radius)) / decay;
  }

  double t_;
  int n_;
  std::vector<EnvelopeTerm> terms_;
};

double plancherel_factor(int n) { return sphere_area(n) * std::pow(2.0 * M_PI, -n); }

double damping_decay(double t, Damping damping) { return damping == Damping::none ? 0.0 : t; }

void check_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": need finite t >= 0");
}

// Envelope terms of |u^(t, r)| / e^{-a t}.
void add_solution_terms(Envelope& env, const InitialData& data, double weight_power) {
  const auto& pos = data.position;
  const auto& vel = data.velocity;
  env.add((1.0 + kDampingRatio) * pos.envelope_coefficient(), pos.envelope_rate(), weight_power);
  env.add(kInverseRootFactor * vel.envelope_coefficient(), vel.envelope_rate(), weight_power - 1.0);
}

struct RadialRange {
  double lower = 0.0;
  double upper = kInfinity;
};

// (2 pi)^{-n} omega_n int |f|^2 r^{n-1} over the range, truncated by the envelope.
NormResult radial_square(const std::function<double(double)>& density, const Envelope& env,
                         RadialRange range, double t, int n, std::vector<double> breakpoints) {
  if (env.empty()) return {0.0, 0.0, true};
  const double target = 1e-30 * env.scale();
  QuadratureSpec spec;
  spec.lower = range.lower;
  spec.abs_tol = target;
  spec.rel_tol = 1e-12;
  spec.oscillation_frequency = t;
  double end = range.upper;
  if (range.upper == kInfinity) {
    double radius = env.radius(target);
    if (radius <= range.lower) radius = 2.0 * std::max(range.lower, 1e-8);
    if (!std::isfinite(env.tail(radius))) return {kInfinity, kInfinity, false};
    spec.upper = kInfinity;
    spec.truncation = radius;
    spec.tail_bound = env.tail(radius);
    end = radius;
  } else {
    spec.upper = range.upper;
  }
  for (double x : damping_breakpoints(t, end)) breakpoints.push_back(x);
  spec.breakpoints = std::move(breakpoints);
  auto f = [&](double r) { return density(r) * std::pow(r, n - 1); };
  const QuadratureResult q = integrate(f, spec);
  const double factor = plancherel_factor(n);
  return {factor * q.value, factor * q.error_estimate, q.converged};
}

NormResult square_root(const NormResult& squared) {
  const double value = std::sqrt(std::max(0.0, squared.value));
  const double error = value > 0.0 ? squared.error_estimate / (2.0 * value) : std::sqrt(squared.error_estimate);
  return {value, error, squared.converged};
}

}  // namespace

NormResult l2_norm(double t, const InitialData& data, Damping damping) {
  check_time(t, "l2_norm");
  data.validate();
  const int n = data.dimension();
  Envelope env(damping_decay(t, damping), n);
  add_solution_terms(env, data, 0.0);
  auto density = [&](double r) { return std::norm(mode_solution(t, r, data, damping)); };
  return square_root(radial_square(density, env, {}, t, n, {}));
}

NormResult residual_norm(double t, const InitialData& data, const ResidualOptions& options) {
  check_time(t, "residual_norm");
  data.validate();
  if (!(options.split > 0.0) || !std::isfinite(options.split)) {
    throw DomainError("residual_norm: split radius must be finite and > 0");
  }
  const int n = data.dimension();
  const double mass = data.velocity.mass();
  Envelope env(t, n);
  add_solution_terms(env, data, 0.0);
  env.add(mass, 0.0, -1.0);

  auto density = [&](double r) {
    if (options.method == ResidualMethod::remainder_sum && r > 0.0) {
      return std::norm(decompose_mode(t, r, data).remainder_sum());
    }
    return std::norm(mode_solution(t, r, data) - profile_mode(t, r, mass));
  };
  RadialRange range;
  std::vector<double> breakpoints;
  switch (options.band) {
    case Band::full:
      breakpoints.push_back(options.split);
      break;
    case Band::low:
      range.upper = options.split;
      break;
    case Band::high:
      range.lower = options.split;
      break;
  }
  return square_root(radial_square(density, env, range, t, n, std::move(breakpoints)));
}

NormResult energy(double t, const InitialData& data, Damping damping) {
  check_time(t, "energy");
  data.validate();
  const int n = data.dimension();
  const auto& pos = data.position;
  const auto& vel = data.velocity;
  Envelope env(damping_decay(t, damping), n);
  // |u_t^| <= e^{-at} (|u_1^| (1 + a/b) + r^2 |u_0^| / b);  r |u^| <= e^{-at} (r |u_0^| (1 + a/b) + r |u_1^| / b).
  env.add((1.0 + kDampingRatio) * vel.envelope_coefficient(), vel.envelope_rate(), 0.0);
  env.add(kInverseRootFactor * pos.envelope_coefficient(), pos.envelope_rate(), 1.0);
  env.add((1.0 + kDampingRatio) * pos.envelope_coefficient(), pos.envelope_rate(), 1.0);
  env.add(kInverseRootFactor * vel.envelope_coefficient(), vel.envelope_rate(), 0.0);
  auto density = [&](double r) {
    return std::norm(mode_velocity(t, r, data, damping)) + r * r * std::norm(mode_solution(t, r, data, damping));
  };
  NormResult twice = radial_square(density, env, {}, t, n, {});
  return {0.5 * twice.value, 0.5 * twice.error_estimate, twice.converged};
}

double sinc_squared(double x) {
  if (std::abs(x) < 1e-3) {
    // sum_k (-1)^k 2^{2k+1} x^{2k} / (2k+2)!
    const double y = x * x;
    return 1.0 + y * (-1.0 / 3.0 + y * (2.0 / 45.0 + y * (-1.0 / 315.0 + y * (2.0 / 14175.0 + y * (-2.0 / 467775.0)))));
  }
  const double s = std::sin(x) / x;
  return s * s;
}

namespace {

double require_converged(const QuadratureResult& q, const char* what) {
  if (!q.converged) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge (error estimate " +
                           std::to_string(q.error_estimate) + ")");
  }
  return q.value;
}

// int_0^inf (1+r^2)^{-t} weight(r) dr where weight(r) <= r^p and oscillates at frequency t.
double damped_oscillatory_integral(double t, double p, const std::function<double(double)>& weight,
                                   const char* what) {
  const double tol = 1e-17 * std::pow(t, -0.5 * (p + 1.0));
  // At small t the tail is only polynomial; cap the number of half periods
  // and let the larger tail enter the tolerance and the error estimate.
  constexpr double kMaxHalfPeriods = 131072.0;
  const double radius = std::min(support_radius(t, p, tol), kMaxHalfPeriods * M_PI / t);
  QuadratureSpec spec;
  spec.lower = 0.0;
  spec.upper = kInfinity;
  spec.truncation = radius;
  spec.tail_bound = support_tail_bound(t, p, radius);
  spec.abs_tol = tol + 2.0 * spec.tail_bound;
  spec.rel_tol = 1e-12;
  spec.oscillation_frequency = t;
  spec.breakpoints = damping_breakpoints(t, radius);
  auto f = [&](double r) { return std::exp(-t * std::log1p(r * r)) * weight(r); };
  return require_converged(integrate(f, spec), what);
}

}  // namespace

double profile_moment(double t, int n, ProfileWeight weight) {
  if (!std::isfinite(t)) throw DomainError("profile_moment: t must be finite");
  if (n < 1) throw DomainError("profile_moment: dimension must be >= 1");
  if (weight == ProfileWeight::sine && n <= 2) throw DomainError("profile_moment: sine weight needs n > 2");
  const double p = weight == ProfileWeight::sine ? n - 3.0 : n - 1.0;
  if (!(t > 1.0) || !(t > 0.5 * (p + 3.0))) {
    throw DomainError("profile_moment: need t > max(1, (p+3)/2) with p = n-3 (sine) or n-1 (cosine)");
  }
  std::function<double(double)> w;
  if (weight == ProfileWeight::sine) {
    w = [t, n](double r) { return t * t * sinc_squared(t * r) * std::pow(r, n - 1); };
  } else {
    w = [t, n](double r) {
      const double c = std::cos(t * r);
      return c * c * std::pow(r, n - 1);
    };
  }
  return sphere_area(n) * damped_oscillatory_integral(t, p, w, "profile_moment");
}

double profile_integral_q(double t) {
  if (!(t > 2.0) || !std::isfinite(t)) throw DomainError("profile_integral_q: need finite t > 2");
  return damped_oscillatory_integral(t, -2.0, [t](double r) { return t * t * sinc_squared(t * r); },
                                     "profile_integral_q");
}

double profile_integral_r(double t) {
  if (!(t > 2.0) || !std::isfinite(t)) throw DomainError("profile_integral_r: need finite t > 2");
  return damped_oscillatory_integral(t, -1.0, [t](double r) { return t * t * r * sinc_squared(t * r); },
                                     "profile_integral_r");
}

double q_window_bound(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("q_window_bound: need finite t > 0");
  QuadratureSpec spec;
  spec.lower = 1.25 * M_PI / t;
  spec.upper = 1.75 * M_PI / t;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-13;
  auto f = [t](double r) { return std::exp(-t * std::log1p(r * r)) / (r * r); };
  return 0.5 * require_converged(integrate(f, spec), "q_window_bound");
}

void DecaySeries::validate() const {
  if (t_grid.size() != values.size()) throw DomainError("decay series '" + label + "': length mismatch");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i])) {
      throw DomainError("decay series '" + label + "': times must be finite and > 0");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("decay series '" + label + "': times must be strictly increasing");
    }
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw DomainError("decay series '" + label + "': values must be finite and > 0");
    }
  }
}

DecayFitResult fit_decay(const DecaySeries& series, double t_min, double t_max) {
  series.validate();
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < series.t_grid.size(); ++i) {
    if (series.t_grid[i] >= t_min && series.t_grid[i] <= t_max) {
      x.push_back(std::log(series.t_grid[i]));
      y.push_back(std::log(series.values[i]));
    }
  }
  if (x.size() < 5) throw DomainError("fit_decay: need at least 5 points in the window");
  const double count = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_decay: degenerate window");
  DecayFitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_log_residual = std::max(fit.max_log_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  }
  fit.t_min = std::exp(x.front());
  fit.t_max = std::exp(x.back());
  fit.points = x.size();
  return fit;
}

DecayFitResult fit_decay(const DecaySeries& series) {
  return fit_decay(series, -kInfinity, kInfinity);
}

double SpectralProfile::transform(double r) const {
  if (r > bandwidth) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    sum += coefficients[k] * std::sin(static_cast<double>(k + 1) * M_PI * r / bandwidth);
  }
  return sum;
}

SpectralProfile SpectralProfile::random(std::uint64_t seed) {
  // Raw 64-bit draws mapped by hand keep the stream identical across standard libraries.
  std::mt19937_64 engine(seed);
  auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  SpectralProfile profile;
  profile.bandwidth = std::pow(10.0, -2.0 + 4.0 * unit());
  const std::size_t modes = 1 + static_cast<std::size_t>(engine() % 8);
  for (std::size_t k = 0; k < modes; ++k) profile.coefficients.push_back(2.0 * unit() - 1.0);
  profile.dimension = 1 + static_cast<int>(engine() % 3);
  return profile;
}

SpectralNorms spectral_norms(const SpectralProfile& profile) {
  if (!(profile.bandwidth > 0.0) || !std::isfinite(profile.bandwidth)) {
    throw DomainError("spectral profile: bandwidth must be finite and > 0");
  }
  if (profile.dimension < 1) throw DomainError("spectral profile: dimension must be >= 1");
  const int n = profile.dimension;
  const double factor = plancherel_factor(n);
  auto norm_with = [&](auto symbol) {
    QuadratureSpec spec;
    spec.lower = 0.0;
    spec.upper = profile.bandwidth;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-12;
    spec.oscillation_frequency = static_cast<double>(profile.coefficients.size()) * M_PI / profile.bandwidth;
    auto f = [&](double r) {
      const double v = profile.transform(r) * symbol(r);
      return v * v * std::pow(r, n - 1);
    };
    return std::sqrt(factor * require_converged(integrate(f, spec), "spectral_norms"));
  };
  SpectralNorms norms;
  norms.plain = norm_with([](double) { return 1.0; });
  norms.operator_a = norm_with([](double r) { return r * r; });
  norms.operator_l = norm_with([](double r) { return std::log1p(r * r); });
  return norms;
}

}  // namespace logdamp
