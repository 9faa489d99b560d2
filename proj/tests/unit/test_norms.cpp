#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "logdamp/errors.hpp"
#include "logdamp/norms.hpp"

using namespace logdamp;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

InitialData velocity_only(int n) { return {InitialDataSpec::zero(n), InitialDataSpec::gaussian(1.0, 1.0, n)}; }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// int_0^inf (1+r^2)^{-2} sin^2(2r) dr = (pi/8)(1 - 5 e^{-4}), from the
// cosine transform of (1+r^2)^{-2}; and int_0^inf s |log s| e^{-s^2} ds.
constexpr double kSineMomentT2 = 0.35673640883706738902;
constexpr double kLogGaussMoment = 0.25399588342314335199;

}  // namespace

TEST_CASE("Plancherel at t = 0") {
  const InitialData one{InitialDataSpec::gaussian(1.0, 1.0, 1), InitialDataSpec::zero(1)};
  CHECK(l2_norm(0.0, one).value == doctest::Approx(1.3313354).epsilon(1e-7));
  for (int n : {1, 2, 3}) {
    for (double w : {0.5, 1.0, 2.0}) {
      const InitialData data{InitialDataSpec::gaussian(1.5, w, n), InitialDataSpec::zero(n)};
      const auto r = l2_norm(0.0, data);
      CHECK(r.converged);
      CHECK(rel(r.value, data.position.l2_norm()) <= 1e-10);
    }
  }
}

TEST_CASE("zero data has zero norms") {
  const InitialData zero{InitialDataSpec::zero(2), InitialDataSpec::zero(2)};
  for (double t : {0.0, 1.0, 100.0}) {
    CHECK(l2_norm(t, zero).value == 0.0);
    CHECK(residual_norm(t, zero).value == 0.0);
    CHECK(energy(t, zero).value == 0.0);
  }
}

TEST_CASE("n = 3 norm follows t^{-1/4}") {
  const auto data = velocity_only(3);
  const double ratio = l2_norm(1e4, data).value / l2_norm(1e3, data).value;
  CHECK(std::abs(ratio / std::pow(10.0, -0.25) - 1.0) <= 0.1);
}

TEST_CASE("norm error estimates are small and reported") {
  const auto r = l2_norm(500.0, velocity_only(2));
  CHECK(r.converged);
  CHECK(r.error_estimate <= 1e-10 * r.value);
}

TEST_CASE("energy at t = 0 and its decrease") {
  const auto data = velocity_only(1);
  // (1/2) ||u_1||^2 = (1/2) sqrt(pi) for e^{-x^2/2}.
  CHECK(rel(energy(0.0, data).value, 0.5 * std::sqrt(M_PI)) <= 1e-10);
  for (int n : {1, 2, 3}) {
    for (const InitialData& d : {velocity_only(n),
                                 InitialData{InitialDataSpec::gaussian(1.0, 0.7, n), InitialDataSpec::gaussian(-0.5, 1.4, n)}}) {
      double previous = energy(0.0, d).value;
      for (int i = 1; i <= 20; ++i) {
        const double t = 0.25 * i * i;
        const double e = energy(t, d).value;
        CHECK(e <= previous * (1.0 + 1e-12));
        previous = e;
      }
    }
  }
}

TEST_CASE("free wave conserves energy") {
  const InitialData data{InitialDataSpec::gaussian(1.0, 0.7, 2), InitialDataSpec::gaussian(0.5, 1.2, 2)};
  const double e0 = energy(0.0, data, Damping::none).value;
  for (double t : {0.5, 3.0, 17.0, 120.0}) CHECK(rel(energy(t, data, Damping::none).value, e0) <= 1e-10);
}

TEST_CASE("residual: both methods agree") {
  for (int n : {1, 2, 3}) {
    const InitialData data{InitialDataSpec::gaussian(0.3, 0.8, n), InitialDataSpec::gaussian(1.0, 1.0, n)};
    for (double t : {5.0, 100.0, 3000.0}) {
      for (Band band : {Band::full, Band::low, Band::high}) {
        ResidualOptions direct;
        direct.band = band;
        ResidualOptions summed = direct;
        summed.method = ResidualMethod::remainder_sum;
        const double a = residual_norm(t, data, direct).value;
        const double b = residual_norm(t, data, summed).value;
        CHECK(std::abs(a - b) <= 1e-8 * std::max(a, 1e-300) + 1e-300);
      }
    }
  }
}

TEST_CASE("residual bands add up in quadrature") {
  const auto data = velocity_only(2);
  ResidualOptions low;
  low.band = Band::low;
  ResidualOptions high;
  high.band = Band::high;
  for (double t : {3.0, 50.0}) {
    const double full = residual_norm(t, data).value;
    const double l = residual_norm(t, data, low).value;
    const double h = residual_norm(t, data, high).value;
    CHECK(rel(std::hypot(l, h), full) <= 1e-10);
  }
}

TEST_CASE("residual with zero mass is the full norm") {
  const InitialData data{InitialDataSpec::gaussian(1.0, 1.0, 2), InitialDataSpec::zero(2)};
  for (double t : {1.0, 10.0, 100.0}) CHECK(rel(residual_norm(t, data).value, l2_norm(t, data).value) <= 1e-12);
}

TEST_CASE("residual rate t^{-n/4}") {
  for (int n : {1, 2, 3}) {
    const auto data = velocity_only(n);
    std::vector<double> scaled;
    std::vector<double> low_scaled;
    ResidualOptions low;
    low.band = Band::low;
    for (double t : {1e2, 1e3, 1e4}) {
      scaled.push_back(residual_norm(t, data).value * std::pow(t, 0.25 * n));
      const double v = residual_norm(t, data, low).value;
      low_scaled.push_back(v * v * std::pow(t, 0.5 * n));
    }
    CHECK(spread(scaled) <= 3.0);
    CHECK(spread(low_scaled) <= 3.0);
  }
}

TEST_CASE("high band decays faster than t^2 2^{-t}") {
  ResidualOptions high;
  high.band = Band::high;
  for (int n : {1, 2, 3}) {
    const auto data = velocity_only(n);
    auto squared = [&](double t) {
      const double v = residual_norm(t, data, high).value;
      return v * v;
    };
    const double fitted = squared(20.0) / (400.0 * std::exp2(-20.0));
    for (double t : {30.0, 40.0}) CHECK(squared(t) <= fitted * t * t * std::exp2(-t));
  }
}

TEST_CASE("profile moments") {
  CHECK(rel(profile_moment(2.0, 3, ProfileWeight::sine), 4.0 * M_PI * kSineMomentT2) <= 1e-9);
  for (int n : {3, 4}) {
    std::vector<double> scaled;
    for (double t : {1e2, 1e3, 1e4}) scaled.push_back(profile_moment(t, n, ProfileWeight::sine) * std::pow(t, 0.5 * (n - 2)));
    CHECK(spread(scaled) <= 1.5);
  }
  for (int n : {1, 2}) {
    std::vector<double> scaled;
    for (double t : {1e2, 1e3, 1e4}) scaled.push_back(profile_moment(t, n, ProfileWeight::cosine) * std::pow(t, 0.5 * n));
    CHECK(spread(scaled) <= 1.5);
  }
  CHECK_THROWS_AS(profile_moment(10.0, 2, ProfileWeight::sine), DomainError);
  CHECK_THROWS_AS(profile_moment(1.0, 1, ProfileWeight::cosine), DomainError);
  CHECK_THROWS_AS(profile_moment(10.0, 0, ProfileWeight::cosine), DomainError);
}

TEST_CASE("Q grows like t") {
  std::vector<double> scaled;
  for (double t : {1e2, 1e3, 1e4}) {
    const double q = profile_integral_q(t);
    scaled.push_back(q / t);
    CHECK(q / t >= 1.0);
    CHECK(q / t <= 2.0);
  }
  CHECK(spread(scaled) <= 1.2);
  // Limit: Q(t)/t -> int_0^inf sin^2(s)/s^2 ds = pi/2.
  CHECK(std::abs(scaled.back() - M_PI / 2.0) < 0.01);
  CHECK(q_window_bound(100.0) <= profile_integral_q(100.0));
  CHECK(q_window_bound(100.0) > 0.0);
  CHECK_THROWS_AS(profile_integral_q(2.0), DomainError);
}

TEST_CASE("R grows like log t") {
  for (double t : {1e3, 1e4, 1e6}) {
    const double ratio = profile_integral_r(t) / std::log(t);
    CHECK(ratio >= 0.1);
    CHECK(ratio <= 1.0);
    // Lower witness: (1/8) e^{-c/t} log t - (1/4) e^{-c/t} log(5 pi/4) - (1/2) int s|log s|e^{-s^2}, c = 25 pi^2/16.
    const double damp = std::exp(-25.0 * M_PI * M_PI / (16.0 * t));
    const double witness = damp * std::log(t) / 8.0 - damp * std::log(5.0 * M_PI / 4.0) / 4.0 - 0.5 * kLogGaussMoment;
    CHECK(profile_integral_r(t) >= witness);
  }
  const double r4 = profile_integral_r(1e4) / std::log(1e4);
  const double r6 = profile_integral_r(1e6) / std::log(1e6);
  CHECK(std::max(r4, r6) / std::min(r4, r6) <= 1.25);
  CHECK_THROWS_AS(profile_integral_r(1.5), DomainError);
}

TEST_CASE("sinc squared") {
  CHECK(sinc_squared(0.0) == 1.0);
  for (double x : {1e-8, 1e-5, 9.99e-4, 1e-3, 1.01e-3, 0.5, 3.0}) {
    const double direct = std::pow(std::sin(x) / x, 2);
    CHECK(rel(sinc_squared(x), direct) <= 1e-15);
  }
  CHECK(sinc_squared(-0.25) == sinc_squared(0.25));
}

TEST_CASE("decay fit") {
  DecaySeries exact;
  DecaySeries wobbly;
  DecaySeries flat;
  for (int i = 0; i < 20; ++i) {
    const double t = 100.0 * std::pow(1000.0, i / 19.0);
    exact.t_grid.push_back(t);
    exact.values.push_back(3.0 * std::pow(t, -0.25));
    wobbly.t_grid.push_back(t);
    wobbly.values.push_back(3.0 * std::pow(t, -0.25) * (1.0 + 0.1 * std::sin(std::log(t))));
    flat.t_grid.push_back(t);
    flat.values.push_back(2.5);
  }
  const auto e = fit_decay(exact);
  CHECK(std::abs(e.slope + 0.25) <= 1e-12);
  CHECK(e.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(e.max_log_residual <= 1e-12);
  CHECK(e.points == 20);
  CHECK(std::abs(fit_decay(wobbly).slope + 0.25) <= 0.05);
  CHECK(std::abs(fit_decay(flat).slope) <= 1e-14);

  const auto windowed = fit_decay(exact, 1e3, 1e5);
  CHECK(windowed.t_min >= 1e3);
  CHECK(windowed.t_max <= 1e5 * (1.0 + 1e-12));
  CHECK(windowed.points < 20);
  CHECK_THROWS_AS(fit_decay(exact, 1e3, 2e3), DomainError);

  DecaySeries bad = exact;
  bad.values[3] = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  DecaySeries unsorted = exact;
  std::swap(unsorted.t_grid[0], unsorted.t_grid[1]);
  CHECK_THROWS_AS(unsorted.validate(), DomainError);
}

TEST_CASE("spectral operator inequality") {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto profile = SpectralProfile::random(seed);
    CHECK(profile.bandwidth >= 1e-2);
    CHECK(profile.bandwidth <= 1e2);
    const auto s = spectral_norms(profile);
    worst = std::max(worst, s.operator_l / ((2.0 / M_E) * (s.plain + s.operator_a)));
  }
  CHECK(worst <= 1.0);
  // Same seed, same profile.
  CHECK(SpectralProfile::random(7).coefficients == SpectralProfile::random(7).coefficients);
}
