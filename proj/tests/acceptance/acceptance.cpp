// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "logdamp/modes.hpp"
#include "logdamp/norms.hpp"
#include "logdamp/parallel.hpp"
#include "logdamp/special.hpp"
#include "logdamp/symbols.hpp"

using namespace logdamp;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::log(lo) + unit(rng) * (std::log(hi) - std::log(lo)));
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  return out;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

InitialData velocity_only(int n) { return {InitialDataSpec::zero(n), InitialDataSpec::gaussian(1.0, 1.0, n)}; }

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

Outcome closure_identity() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int n : {1, 3}) {
    const InitialData data{InitialDataSpec::zero(n), InitialDataSpec::gaussian(1.0, 1.0, n)};
    const InitialData both{InitialDataSpec::gaussian(0.5, 0.8, n), InitialDataSpec::gaussian(1.0, 1.0, n)};
    for (int i = 0; i < 5000; ++i) {
      const double t = 1e3 * unit(rng);
      const double r = log_uniform(rng, 1e-6, 1e3);
      worst = std::max(worst, decompose_mode(t, r, i % 2 ? both : data).relative_residual);
    }
  }
  return {worst <= 1e-10, fmt("worst relative residual %.3e over 1e4 points (bound 1e-10)", worst)};
}

Outcome decay_rates() {
  const auto ts = log_grid(1e2, 1e5, 20);
  std::vector<std::vector<double>> norms(3);
  for (int n = 1; n <= 3; ++n) {
    const auto data = velocity_only(n);
    norms[n - 1] = parallel_map(ts.size(), [&](std::size_t i) { return l2_norm(ts[i], data).value; });
  }
  const double slope1 = fit_decay({ts, norms[0], "n=1"}).slope;
  const double slope3 = fit_decay({ts, norms[2], "n=3"}).slope;
  std::vector<double> band;
  for (std::size_t i = 0; i < ts.size(); ++i) band.push_back(norms[1][i] * norms[1][i] / std::log(ts[i]));
  const double variation = spread(band);
  const bool ok = std::abs(slope1 - 0.5) <= 0.05 && std::abs(slope3 + 0.25) <= 0.05 && variation <= 1.25;
  return {ok, fmt("n=1 slope %.5f (0.5 +- 0.05), n=3 slope %.5f (-0.25 +- 0.05), n=2 |u|^2/log t variation %.4f (<= 1.25)",
                  slope1, slope3, variation)};
}

Outcome profile_residual() {
  const auto ts = log_grid(1e2, 1e4, 9);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto data = velocity_only(n);
    const auto scaled = parallel_map(ts.size(), [&](std::size_t i) {
      return residual_norm(ts[i], data).value * std::pow(ts[i], 0.25 * n);
    });
    worst = std::max(worst, spread(scaled));
  }
  return {worst <= 3.0, fmt("max/min of residual t^{n/4}: %.4f (<= 3)", worst)};
}

Outcome lower_moment_rate() {
  const std::vector<double> ts = {1e2, 1e3, 1e4, 1e5, 1e6};
  double worst = 0.0;
  for (double p : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0}) worst = std::max(worst, lower_moment_band(p, ts).variation());
  const double e0 = std::abs(lower_moment(1.0, 0.0) - M_PI / 4.0);
  const double e2 = std::abs(lower_moment(3.0, 2.0) - M_PI / 32.0);
  const bool ok = worst <= 1.2 && e0 <= 1e-12 && e2 <= 1e-12;
  return {ok, fmt("worst variation %.4f (<= 1.2); |I_0(1) - pi/4| = %.1e, |I_2(3) - pi/32| = %.1e (<= 1e-12)", worst,
                  e0, e2)};
}

Outcome moment_recurrence() {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double p = 2.0 + 6.0 * unit(rng);
    const double t = (p + 2.0) + (200.0 - p - 2.0) * unit(rng);
    worst = std::max(worst, rel(lower_moment_recurrence(t, p, lower_moment(t, p - 2.0)), lower_moment(t, p)));
  }
  return {worst <= 1e-10, fmt("worst relative disagreement %.3e over 50 draws (<= 1e-10)", worst)};
}

Outcome upper_moment_bounds() {
  double worst = 0.0;
  int violations = 0;
  for (double p : {-1.0, 0.0, 1.0, 3.0}) {
    for (double t : {10.0, 20.0, 50.0}) {
      const double v = upper_moment_scaled(t, p);
      for (const ScaledBounds& b : {upper_moment_band(t, p), upper_moment_sandwich(t, p)}) {
        // At p = 1 both sides equal 1 exactly; allow quadrature rounding there only.
        const double slack = p == 1.0 ? 1e-10 : 0.0;
        const double excess = std::max(b.lower / v, v / b.upper) - 1.0;
        worst = std::max(worst, excess);
        if (excess > slack) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%d violations in 24 comparisons; worst excess %.2e", violations, worst)};
}

Outcome half_line_identity() {
  double worst = 0.0;
  for (double t : {2.0, 5.0, 20.0, 100.0}) {
    const double sum = lower_moment(t, 0.0) + upper_moment_direct(t, 0.0);
    worst = std::max(worst, rel(sum, std::sqrt(M_PI) / 2.0 * gamma_ratio(t)));
  }
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double t : log_grid(50.0, 1e6, 200)) {
    const double s = gamma_ratio(t) * std::sqrt(t);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const bool ok = worst <= 1e-10 && lo >= 0.99 && hi <= 1.01;
  return {ok, fmt("identity relerr %.2e (<= 1e-10); gamma_ratio sqrt(t) in [%.6f, %.6f] (within [0.99, 1.01])", worst,
                  lo, hi)};
}

Outcome symbol_bounds() {
  std::mt19937_64 rng(8);
  int violations = 0;
  double damping = 0.0;
  double gap = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto s = evaluate_symbols(log_uniform(rng, 1e-8, 1e8));
    const double d = s.a * s.a / (s.b * s.b);
    const double g = s.b_minus_r * s.b_minus_r / (s.b * s.b);
    damping = std::max(damping, d);
    gap = std::max(gap, g);
    violations += d > 1.0 / 3.0;
    violations += g > 28.0 / 3.0;
  }
  return {violations == 0, fmt("%d violations; max a^2/b^2 %.4f (<= 1/3), max (b-r)^2/b^2 %.3e (<= 28/3)", violations,
                               damping, gap)};
}

Outcome profile_integrals() {
  std::vector<double> q;
  bool in_band = true;
  for (double t : {1e2, 1e3, 1e4}) {
    q.push_back(profile_integral_q(t) / t);
    in_band = in_band && q.back() >= 1.0 && q.back() <= 2.0;
  }
  std::vector<double> r;
  for (double t : {1e3, 1e4, 1e6}) r.push_back(profile_integral_r(t) / std::log(t));
  const bool ok = in_band && spread(q) <= 1.2 && spread(r) <= 1.25;
  return {ok, fmt("Q/t in [%.4f, %.4f] (within [1, 2]), variation %.4f (<= 1.2); R/log t variation %.4f (<= 1.25)",
                  *std::min_element(q.begin(), q.end()), *std::max_element(q.begin(), q.end()), spread(q), spread(r))};
}

Outcome profile_moments() {
  const std::vector<double> ts = {1e2, 1e3, 1e4};
  double worst = 0.0;
  for (int n : {3, 4}) {
    std::vector<double> s;
    for (double t : ts) s.push_back(profile_moment(t, n, ProfileWeight::sine) * std::pow(t, 0.5 * (n - 2)));
    worst = std::max(worst, spread(s));
  }
  for (int n : {1, 2}) {
    std::vector<double> s;
    for (double t : ts) s.push_back(profile_moment(t, n, ProfileWeight::cosine) * std::pow(t, 0.5 * n));
    worst = std::max(worst, spread(s));
  }
  return {worst <= 1.5, fmt("worst scaled variation %.4f (<= 1.5)", worst)};
}

Outcome energy_behaviour() {
  const auto ts = log_grid(0.1, 1e3, 20);
  int increases = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const InitialData& data :
         {velocity_only(n), InitialData{InitialDataSpec::gaussian(1.0, 1.0, n), InitialDataSpec::zero(n)},
          InitialData{InitialDataSpec::gaussian(-0.7, 0.5, n), InitialDataSpec::gaussian(2.0, 1.5, n)}}) {
      const auto e = parallel_map(ts.size(), [&](std::size_t i) { return energy(ts[i], data).value; });
      for (std::size_t i = 1; i < e.size(); ++i) increases += e[i] > e[i - 1];
      increases += e.front() > energy(0.0, data).value;
    }
  }
  double drift = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const InitialData data{InitialDataSpec::gaussian(1.0, 0.7, n), InitialDataSpec::gaussian(0.5, 1.2, n)};
    const double e0 = energy(0.0, data, Damping::none).value;
    for (double t : {1.0, 10.0, 100.0}) drift = std::max(drift, rel(energy(t, data, Damping::none).value, e0));
  }
  return {increases == 0 && drift <= 1e-10,
          fmt("%d increases over 9 data sets x 20 times; free-wave drift %.2e (<= 1e-10)", increases, drift)};
}

Outcome operator_inequality() {
  const auto ratios = parallel_map(1000, [](std::size_t i) {
    const auto s = spectral_norms(SpectralProfile::random(1000 + i));
    return s.operator_l / ((2.0 / M_E) * (s.plain + s.operator_a));
  });
  const double worst = *std::max_element(ratios.begin(), ratios.end());

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 10.0;
  while (hi - lo > 1e-10) {
    const double x1 = hi - inv_phi * (hi - lo);
    const double x2 = lo + inv_phi * (hi - lo);
    if (log_ratio(x1) < log_ratio(x2)) {
      lo = x1;
    } else {
      hi = x2;
    }
  }
  const double argmax = 0.5 * (lo + hi);
  const double location = std::abs(argmax - (M_E - 1.0));
  const double value = std::abs(log_ratio(argmax) - 1.0 / M_E);
  const bool ok = worst <= 1.0 && location <= 1e-6 && value <= 1e-12;
  return {ok, fmt("worst |Lv|/((2/e)(|v|+|Av|)) %.4f over 1e3 profiles; argmax off by %.1e, max off by %.1e", worst,
                  location, value)};
}

Outcome high_band_decay() {
  ResidualOptions high;
  high.band = Band::high;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto data = velocity_only(n);
    auto squared = [&](double t) {
      const double v = residual_norm(t, data, high).value;
      return v * v;
    };
    const double fitted = squared(20.0) / (20.0 * 20.0 * std::exp2(-20.0));
    worst = std::max(worst, squared(40.0) / (fitted * 40.0 * 40.0 * std::exp2(-40.0)));
  }
  return {worst <= 1.0, fmt("squared high-band residual at t=40 over the t^2 2^-t envelope fitted at t=20: %.4f (<= 1)",
                            worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closure_identity", closure_identity},
      {"decay_rates", decay_rates},
      {"profile_residual_rate", profile_residual},
      {"lower_moment_rate", lower_moment_rate},
      {"moment_recurrence", moment_recurrence},
      {"upper_moment_bounds", upper_moment_bounds},
      {"half_line_identity", half_line_identity},
      {"symbol_bounds", symbol_bounds},
      {"profile_integral_growth", profile_integrals},
      {"profile_moment_bands", profile_moments},
      {"energy_decay", energy_behaviour},
      {"operator_inequality", operator_inequality},
      {"high_band_decay", high_band_decay},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failures += !outcome.passed;
    std::printf("%s %2d %s: %s\n", outcome.passed ? "PASS" : "FAIL", index, name, outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
