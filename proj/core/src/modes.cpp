#include "logdamp/modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logdamp/errors.hpp"
#include "logdamp/symbols.hpp"

namespace logdamp {
namespace {

struct ModeSymbols {
  double a = 0.0;
  double b = 0.0;
  double b_minus_r = 0.0;
  double inv_b_minus_inv_r = 0.0;
};

ModeSymbols mode_symbols(double r, Damping damping) {
  if (damping == Damping::none) {
    return {0.0, r, 0.0, 0.0};
  }
  const SymbolValues s = evaluate_symbols(r);
  return {s.a, s.b, s.b_minus_r, s.inv_b_minus_inv_r};
}

void check_time_radius(double t, double r, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + ": need finite t >= 0");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(what) + ": need finite r >= 0");
  }
}

}  // namespace

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

DataFamily parse_family(std::string_view name) {
  if (name == "zero") return DataFamily::zero;
  if (name == "gaussian") return DataFamily::gaussian;
  throw UnsupportedFamily("initial data family '" + std::string(name) +
                          "' has no closed-form transform (supported: gaussian, zero)");
}

std::string_view family_name(DataFamily family) {
  return family == DataFamily::gaussian ? "gaussian" : "zero";
}

InitialDataSpec InitialDataSpec::gaussian(double amplitude, double width, int dimension) {
  InitialDataSpec spec{DataFamily::gaussian, amplitude, width, dimension};
  spec.validate();
  return spec;
}

InitialDataSpec InitialDataSpec::zero(int dimension) {
  InitialDataSpec spec{DataFamily::zero, 0.0, 1.0, dimension};
  spec.validate();
  return spec;
}

void InitialDataSpec::validate() const {
  if (dimension < 1) throw DomainError("initial data: dimension must be >= 1");
  if (family == DataFamily::gaussian) {
    if (!std::isfinite(amplitude)) throw DomainError("initial data: amplitude must be finite");
    if (!(width > 0.0) || !std::isfinite(width)) {
      throw DomainError("initial data: width must be finite and > 0");
    }
  }
}

double InitialDataSpec::transform(double r) const {
  if (is_zero()) return 0.0;
  return mass() * std::exp(-0.5 * width * width * r * r);
}

double InitialDataSpec::mass() const {
  if (is_zero()) return 0.0;
  return amplitude * std::pow(2.0 * M_PI * width * width, 0.5 * dimension);
}

double InitialDataSpec::l2_norm() const {
  if (is_zero()) return 0.0;
  return std::abs(amplitude) * std::pow(M_PI * width * width, 0.25 * dimension);
}

double InitialDataSpec::l1_norm() const { return std::abs(mass()); }

double InitialDataSpec::weighted_l1_norm() const {
  if (is_zero()) return 0.0;
  // int |x| e^{-|x|^2/(2w^2)} dx = omega_n (1/2) (2 w^2)^{(n+1)/2} Gamma((n+1)/2)
  const double n = dimension;
  const double first_moment = sphere_area(dimension) * 0.5 *
                              std::pow(2.0 * width * width, 0.5 * (n + 1.0)) *
                              std::tgamma(0.5 * (n + 1.0));
  return l1_norm() + std::abs(amplitude) * first_moment;
}

double InitialDataSpec::envelope_coefficient() const { return std::abs(mass()); }

double InitialDataSpec::envelope_rate() const {
  return is_zero() ? 0.0 : 0.5 * width * width;
}

void InitialData::validate() const {
  position.validate();
  velocity.validate();
  if (position.dimension != velocity.dimension) {
    throw DomainError("initial data: position and velocity dimensions differ");
  }
}

double DataDecomposition::oscillatory_part(double r) const {
  if (velocity.is_zero()) return 0.0;
  return mass * std::expm1(-0.5 * velocity.width * velocity.width * r * r);
}

DataDecomposition decompose_velocity(const InitialDataSpec& velocity) {
  velocity.validate();
  if (velocity.family != DataFamily::gaussian && velocity.family != DataFamily::zero) {
    throw UnsupportedFamily("decompose_velocity: family without closed-form transform");
  }
  DataDecomposition d;
  d.mass = velocity.mass();
  d.weighted_norm = velocity.weighted_l1_norm();
  d.velocity = velocity;
  return d;
}

double fitted_moment_constant(const DataDecomposition& decomposition, std::span<const double> radii) {
  if (decomposition.weighted_norm == 0.0) return 0.0;
  double worst = 0.0;
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("fitted_moment_constant: radii must be positive");
    worst = std::max(worst, std::abs(decomposition.oscillatory_part(r)) / (r * decomposition.weighted_norm));
  }
  return worst;
}

double sin_ratio(double omega, double t) {
  const double x = omega * t;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
  }
  return std::sin(x) / omega;
}

Complex mode_solution(double t, double r, const InitialData& data, Damping damping) {
  check_time_radius(t, r, "mode_solution");
  const ModeSymbols s = mode_symbols(r, damping);
  const double u0 = data.position.transform(r);
  const double u1 = data.velocity.transform(r);
  const double decay = std::exp(-s.a * t);
  return decay * (u0 * std::cos(s.b * t) + (u1 + u0 * s.a) * sin_ratio(s.b, t));
}

Complex mode_velocity(double t, double r, const InitialData& data, Damping damping) {
  check_time_radius(t, r, "mode_velocity");
  const ModeSymbols s = mode_symbols(r, damping);
  const double u0 = data.position.transform(r);
  const double u1 = data.velocity.transform(r);
  const double decay = std::exp(-s.a * t);
  return decay * (u1 * std::cos(s.b * t) - (s.a * u1 + r * r * u0) * sin_ratio(s.b, t));
}

Complex profile_mode(double t, double r, double mass) {
  check_time_radius(t, r, "profile_mode");
  if (mass == 0.0) return 0.0;
  return mass * std::exp(-0.5 * t * std::log1p(r * r)) * sin_ratio(r, t);
}

double ModeDecomposition::scale() const {
  double s = std::abs(solution) + std::abs(profile);
  for (const auto& k : remainders) s += std::abs(k);
  return s;
}

Complex ModeDecomposition::remainder_sum() const {
  Complex s = 0.0;
  for (const auto& k : remainders) s += k;
  return s;
}

ModeDecomposition decompose_mode(double t, double r, const InitialData& data) {
  check_time_radius(t, r, "decompose_mode");
  if (!(r > 0.0)) throw DomainError("decompose_mode: need r > 0");
  const SymbolValues s = evaluate_symbols(r);
  const DataDecomposition split = decompose_velocity(data.velocity);
  const double u0 = data.position.transform(r);
  const double mass = split.mass;
  const double decay = std::exp(-s.a * t);
  const double sin_bt = std::sin(s.b * t);
  const double cos_bt = std::cos(s.b * t);

  // Every term carries e^{-at}; build them without it, then scale.
  const Complex solution = u0 * cos_bt + (data.velocity.transform(r) + u0 * s.a) * sin_ratio(s.b, t);
  const Complex profile = mass * sin_ratio(r, t);
  const Complex moment(split.oscillatory_part(r), -split.odd_part(r));
  std::array<Complex, 5> k;
  k[0] = moment / s.b * sin_bt;
  k[1] = u0 * (s.a / s.b) * sin_bt;
  k[2] = u0 * cos_bt;
  k[3] = mass * std::sin(r * t) * s.inv_b_minus_inv_r;
  // sin(bt) - sin(rt): the product 2 cos((b+r)t/2) sin((b-r)t/2) with the stable
  // b - r while |b - r| t is small; beyond that the phase rounding of (b+r)t/2
  // would exceed the cancellation it avoids.
  const double half_gap = 0.5 * s.b_minus_r * t;
  const double sine_gap = std::abs(half_gap) < 0.5 ? 2.0 * std::cos(0.5 * (s.b + r) * t) * std::sin(half_gap)
                                                   : sin_bt - std::sin(r * t);
  k[4] = mass * sine_gap / s.b;

  Complex residual = solution - profile;
  double scale = std::abs(solution) + std::abs(profile);
  for (const auto& term : k) {
    residual -= term;
    scale += std::abs(term);
  }

  ModeDecomposition m;
  m.t = t;
  m.r = r;
  m.solution = decay * solution;
  m.profile = std::exp(-0.5 * t * std::log1p(r * r)) * profile;
  for (std::size_t j = 0; j < k.size(); ++j) m.remainders[j] = decay * k[j];
  m.closure_residual = std::abs(m.solution - m.profile - m.remainder_sum());
  m.relative_residual = scale > 0.0 ? std::abs(residual) / scale : 0.0;
  return m;
}

double data_constant(const InitialData& data) {
  return data.position.l2_norm() + data.velocity.l2_norm() + data.position.l1_norm() +
         data.velocity.weighted_l1_norm();
}

double low_band_radius() {
  auto excess = [](double s) { return evaluate_symbols(s).g - 0.5; };
  constexpr int kSamples = 4096;
  double previous = 0.0;
  for (int i = 1; i <= kSamples; ++i) {
    const double s = static_cast<double>(i) / kSamples;
    if (excess(s) > 0.0) {
      double lo = previous;
      double hi = s;
      for (int k = 0; k < 100; ++k) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? hi : lo) = mid;
      }
      return lo;
    }
    previous = s;
  }
  return 1.0;
}

}  // namespace logdamp
