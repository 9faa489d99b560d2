// The inequality suite behind `logdamp lemmas`. Each check reduces to a worst
// observed quantity compared against a bound; margin = 1 - worst / bound, so
// a check passes iff its margin is >= 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/csv.hpp"
#include "cli/sampling.hpp"
#include "logdamp/norms.hpp"
#include "logdamp/parallel.hpp"
#include "logdamp/special.hpp"
#include "logdamp/symbols.hpp"

namespace logdamp::cli {
namespace {

struct Verdict {
  std::string name;
  std::size_t samples = 0;
  double worst = 0.0;
  double bound = 1.0;

  double margin() const { return 1.0 - worst / bound; }
  bool passed() const { return worst <= bound; }
};

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// Seeds for the independent random streams of each check.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
}

Verdict lower_moment_rate() {
  const std::vector<double> orders = {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0};
  const std::vector<double> ts = {1e2, 1e3, 1e4, 1e5, 1e6};
  const auto spreads = parallel_map(orders.size(), [&](std::size_t i) {
    std::vector<double> scaled;
    for (double t : ts) scaled.push_back(lower_moment(t, orders[i]) * std::pow(t, 0.5 * (orders[i] + 1.0)));
    return spread(scaled);
  });
  return {"lower_moment_rate", orders.size() * ts.size(), max_of(spreads), 1.2};
}

Verdict lower_moment_witness_check() {
  std::vector<double> ratios;
  for (double p : {1.0, 2.0, 3.0}) {
    for (double t : {10.0, 100.0}) ratios.push_back(lower_moment_witness(t, p) / lower_moment(t, p));
  }
  return {"lower_moment_witness", ratios.size(), max_of(ratios), 1.0};
}

Verdict recurrence(std::uint64_t seed, double tol) {
  Sampler rng(seed);
  std::vector<std::pair<double, double>> points(50);
  for (auto& [p, t] : points) {
    p = rng.uniform(2.0, 8.0);
    t = rng.uniform(p + 2.0, 200.0);
  }
  const auto errors = parallel_map(points.size(), [&](std::size_t i) {
    const auto [p, t] = points[i];
    const double direct = lower_moment(t, p);
    return std::abs(lower_moment_recurrence(t, p, lower_moment(t, p - 2.0)) - direct) / direct;
  });
  return {"moment_recurrence", points.size(), max_of(errors), tol};
}

Verdict upper_band(const std::vector<double>& orders) {
  std::vector<std::pair<double, double>> points;
  for (double p : orders) {
    for (double t : {10.0, 20.0, 50.0}) points.emplace_back(p, t);
  }
  const auto ratios = parallel_map(points.size(), [&](std::size_t i) {
    const auto [p, t] = points[i];
    const double v = upper_moment_scaled(t, p);
    const ScaledBounds band = upper_moment_band(t, p);
    const ScaledBounds sandwich = upper_moment_sandwich(t, p);
    return std::max({band.lower / v, v / band.upper, sandwich.lower / v, v / sandwich.upper});
  });
  // p = 1 makes both bands collapse to the single value 1.
  return {"upper_moment_band", points.size(), max_of(ratios), 1.0 + 1e-10};
}

Verdict middle_band_bound(std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<std::array<double, 3>> points(200);
  for (auto& [eta, p, t] : points) {
    eta = rng.uniform(0.05, 1.0);
    p = rng.uniform(0.0, 5.0);
    t = rng.uniform(0.0, 100.0);
  }
  const auto ratios = parallel_map(points.size(), [&](std::size_t i) {
    const auto [eta, p, t] = points[i];
    return middle_band(eta, p, t) / std::exp(-t * std::log1p(eta * eta));
  });
  return {"middle_band_bound", points.size(), max_of(ratios), 1.0};
}

std::pair<Verdict, Verdict> symbol_bounds(std::uint64_t seed) {
  Sampler rng(seed);
  double damping = 0.0;
  double gap = 0.0;
  constexpr std::size_t kSamples = 10000;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const SymbolValues s = evaluate_symbols(rng.log_uniform(1e-8, 1e8));
    damping = std::max(damping, s.a * s.a / (s.b * s.b));
    gap = std::max(gap, s.b_minus_r * s.b_minus_r / (s.b * s.b));
  }
  return {{"symbol_damping_ratio", kSamples, damping, 1.0 / 3.0},
          {"symbol_root_gap", kSamples, gap, 28.0 / 3.0}};
}

Verdict moment_constant(std::uint64_t seed, const RunConfig& config) {
  Sampler rng(seed);
  std::vector<double> radii(10000);
  for (auto& r : radii) r = rng.log_uniform(1e-6, 1e3);
  double worst = 0.0;
  for (int n : config.dimensions) {
    worst = std::max(worst, fitted_moment_constant(decompose_velocity(config.data_at(n).velocity), radii));
  }
  // |u^(xi) - u^(0)| <= |xi| int |x| |u| dx, so K = 1 always suffices.
  return {"moment_constant", radii.size() * config.dimensions.size(), worst, 1.0};
}

Verdict profile_moment_band(const std::string& name, ProfileWeight weight, std::vector<int> dims) {
  const std::vector<double> ts = {1e2, 1e3, 1e4};
  const auto spreads = parallel_map(dims.size(), [&](std::size_t i) {
    const int n = dims[i];
    const double exponent = weight == ProfileWeight::sine ? 0.5 * (n - 2) : 0.5 * n;
    std::vector<double> scaled;
    for (double t : ts) scaled.push_back(profile_moment(t, n, weight) * std::pow(t, exponent));
    return spread(scaled);
  });
  return {name, dims.size() * ts.size(), max_of(spreads), 1.5};
}

Verdict low_band_residual(const RunConfig& config) {
  const std::vector<double> ts = {1e2, 1e3, 1e4};
  ResidualOptions options;
  options.split = config.split_radius();
  options.band = Band::low;
  options.method = config.method;
  const auto spreads = parallel_map(config.dimensions.size(), [&](std::size_t i) {
    const int n = config.dimensions[i];
    const InitialData data = config.data_at(n);
    std::vector<double> scaled;
    for (double t : ts) {
      const double v = residual_norm(t, data, options).value;
      scaled.push_back(v * v * std::pow(t, 0.5 * n));
    }
    return spread(scaled);
  });
  return {"low_band_residual", config.dimensions.size() * ts.size(), max_of(spreads), 3.0};
}

Verdict high_band_decay(const RunConfig& config) {
  ResidualOptions options;
  options.split = config.split_radius();
  options.band = Band::high;
  options.method = config.method;
  const auto ratios = parallel_map(config.dimensions.size(), [&](std::size_t i) {
    const InitialData data = config.data_at(config.dimensions[i]);
    auto squared = [&](double t) {
      const double v = residual_norm(t, data, options).value;
      return v * v;
    };
    auto shape = [](double t) { return t * t * std::exp2(-t); };
    const double fitted = squared(20.0) / shape(20.0);
    return fitted > 0.0 ? squared(40.0) / (fitted * shape(40.0)) : 0.0;
  });
  return {"high_band_decay", config.dimensions.size(), max_of(ratios), 1.0};
}

Verdict operator_inequality(std::uint64_t seed) {
  constexpr std::size_t kProfiles = 1000;
  const auto ratios = parallel_map(kProfiles, [&](std::size_t i) {
    const SpectralNorms s = spectral_norms(SpectralProfile::random(stream_seed(seed, i)));
    return s.operator_l / ((2.0 / M_E) * (s.plain + s.operator_a));
  });
  return {"operator_inequality", kProfiles, max_of(ratios), 1.0};
}

std::pair<Verdict, Verdict> log_ratio_peak(std::uint64_t seed) {
  Sampler rng(seed);
  double peak = 0.0;
  constexpr std::size_t kSamples = 10000;
  for (std::size_t i = 0; i < kSamples; ++i) peak = std::max(peak, log_ratio(rng.uniform(0.0, 1e8)));
  for (std::size_t i = 0; i < kSamples; ++i) peak = std::max(peak, log_ratio(rng.uniform(0.0, 10.0)));

  // Golden-section search for the maximiser on [0, 10].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 10.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = log_ratio(x1);
  double f2 = log_ratio(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = log_ratio(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = log_ratio(x1);
    }
  }
  const double argmax = 0.5 * (lo + hi);
  const double location = std::abs(argmax - (M_E - 1.0)) / 1e-6;
  const double value = std::abs(log_ratio(argmax) - 1.0 / M_E) / 1e-12;
  return {{"log_ratio_bound", 2 * kSamples, peak * M_E, 1.0},
          {"log_ratio_maximum", 1, std::max(location, value), 1.0}};
}

}  // namespace

int run_lemmas(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const std::uint64_t seed = config.seed;
  std::vector<Verdict> verdicts;
  verdicts.push_back(lower_moment_rate());
  verdicts.push_back(lower_moment_witness_check());
  verdicts.push_back(recurrence(stream_seed(seed, 1), config.tol));
  verdicts.push_back(upper_band(config.orders));
  verdicts.push_back(middle_band_bound(stream_seed(seed, 2)));
  const auto [damping, gap] = symbol_bounds(stream_seed(seed, 3));
  verdicts.push_back(damping);
  verdicts.push_back(gap);
  verdicts.push_back(moment_constant(stream_seed(seed, 4), config));
  verdicts.push_back(profile_moment_band("sine_profile_moment", ProfileWeight::sine, {3, 4}));
  verdicts.push_back(profile_moment_band("cosine_profile_moment", ProfileWeight::cosine, {1, 2}));
  verdicts.push_back(low_band_residual(config));
  verdicts.push_back(high_band_decay(config));
  verdicts.push_back(operator_inequality(stream_seed(seed, 5)));
  const auto [bound, maximum] = log_ratio_peak(stream_seed(seed, 6));
  verdicts.push_back(bound);
  verdicts.push_back(maximum);

  CsvWriter csv(out);
  csv.comment("logdamp lemmas");
  csv.comment("config-hash " + format_hash(config.hash()));
  csv.row({"check", "samples", "worst", "bound", "margin", "status"});
  bool all = true;
  for (const auto& v : verdicts) {
    const std::string status = v.passed() ? "PASS" : "FAIL";
    csv.row({v.name, std::to_string(v.samples), format_scientific(v.worst), format_scientific(v.bound),
             format_scientific(v.margin()), status});
    log << status << ' ' << v.name << ": worst " << format_scientific(v.worst) << " vs bound "
        << format_scientific(v.bound) << '\n';
    all = all && v.passed();
  }
  return all ? kExitPass : kExitCheckFailed;
}

}  // namespace logdamp::cli
