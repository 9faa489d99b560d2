#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include "cli/csv.hpp"
#include "logdamp/errors.hpp"
#include "logdamp/norms.hpp"
#include "logdamp/parallel.hpp"
#include "logdamp/quadrature.hpp"
#include "logdamp/special.hpp"

namespace logdamp::cli {
namespace {

constexpr double kBandSlack = 1e-10;

void write_preamble(CsvWriter& csv, const RunConfig& config) {
  csv.comment("logdamp " + std::string(command_name(config.command)));
  csv.comment("config-hash " + format_hash(config.hash()));
}

int report(const std::vector<Check>& checks, CsvWriter& csv, std::ostream& log) {
  bool all = true;
  for (const auto& check : checks) {
    const std::string line = (check.passed ? "PASS " : "FAIL ") + check.name + ": " + check.detail;
    csv.comment(line);
    log << line << '\n';
    all = all && check.passed;
  }
  return all ? kExitPass : kExitCheckFailed;
}

double variation(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi == 0.0) return 1.0;
  return *lo > 0.0 ? *hi / *lo : kInfinity;
}

// Power of t in ||u(t)|| for data with nonzero mass: sqrt(t) in 1-D, t^{-(n-2)/4} from n = 3 on.
double decay_exponent(int n) { return n == 1 ? 0.5 : -(n - 2) / 4.0; }

struct SpecialRow {
  double p = 0.0;
  double t = 0.0;
  double lower = 0.0;
  double lower_scaled = 0.0;
  std::optional<double> upper;
  std::optional<double> upper_scaled;
  double hyp2f1 = 0.0;
  std::optional<double> gamma;
  std::optional<double> h0_relerr;
};

SpecialRow special_row(double p, double t) {
  SpecialRow row;
  row.p = p;
  row.t = t;
  row.lower = lower_moment(t, p);
  row.lower_scaled = row.lower * std::pow(t, 0.5 * (p + 1.0));
  row.hyp2f1 = hyp2f1_slice(t, p);
  if (t > 0.5 * (p + 3.0)) {
    row.upper_scaled = upper_moment_scaled(t, p);
    row.upper = upper_moment(t, p);
  } else if (t > 0.5 * (p + 1.0)) {
    row.upper = upper_moment_direct(t, p);
    if (t > 1.0) row.upper_scaled = *row.upper * (t - 1.0) * std::exp2(t);
  }
  if (t > 0.5) row.gamma = gamma_ratio(t);
  if (p == 0.0 && row.upper && row.gamma) {
    const double closed = half_line_integral(t);
    row.h0_relerr = std::abs(row.lower + *row.upper - closed) / closed;
  }
  return row;
}

}  // namespace

int run_special(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const std::vector<double> ts = config.grid.values();
  const std::size_t count = config.orders.size() * ts.size();
  const auto rows = parallel_map(count, [&](std::size_t i) {
    return special_row(config.orders[i / ts.size()], ts[i % ts.size()]);
  });

  CsvWriter csv(out);
  write_preamble(csv, config);
  csv.row({"p", "t", "I_p", "I_p_scaled", "J_p", "J_p_scaled", "hyp2f1", "gamma_ratio", "h0_identity_relerr"});
  for (const auto& r : rows) {
    csv.row({format_number(r.p), format_number(r.t), format_number(r.lower), format_number(r.lower_scaled),
             format_optional(r.upper), format_optional(r.upper_scaled), format_number(r.hyp2f1),
             format_optional(r.gamma), format_optional(r.h0_relerr)});
  }

  std::vector<Check> checks;
  {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (!r.h0_relerr) continue;
      worst = std::max(worst, *r.h0_relerr);
      ++n;
    }
    const bool ok = std::all_of(rows.begin(), rows.end(), [&](const SpecialRow& r) {
      return !r.h0_relerr || *r.h0_relerr < config.tol;
    });
    checks.push_back({"half_line_identity", ok,
                      std::to_string(n) + " rows, worst relerr " + format_scientific(worst) + " (< " +
                          format_scientific(config.tol) + ")"});
  }
  for (double p : config.orders) {
    std::vector<double> scaled;
    for (const auto& r : rows) {
      if (r.p == p && r.t >= 100.0) scaled.push_back(r.lower_scaled);
    }
    if (scaled.size() < 2) continue;
    const double v = variation(scaled);
    checks.push_back({"lower_moment_rate p=" + format_number(p), v <= config.band_ratio,
                      "max/min of I_p t^{(p+1)/2} over t >= 100 is " + format_number(v) + " (<= " +
                          format_number(config.band_ratio) + ")"});
  }
  {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (!r.upper_scaled || !(r.t > std::max(1.0, 0.5 * (r.p + 1.0)))) continue;
      const ScaledBounds band = upper_moment_band(r.t, r.p);
      worst = std::max({worst, band.lower / *r.upper_scaled, *r.upper_scaled / band.upper});
      ++n;
    }
    checks.push_back({"upper_moment_band", worst <= 1.0 + kBandSlack,
                      std::to_string(n) + " rows, worst bound ratio " + format_number(worst)});
  }
  {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      if (!r.gamma || r.t < 50.0) continue;
      worst = std::max(worst, std::abs(*r.gamma * std::sqrt(r.t) - 1.0));
      ++n;
    }
    checks.push_back({"gamma_ratio_limit", worst <= 0.01,
                      std::to_string(n) + " rows with t >= 50, worst |ratio sqrt(t) - 1| " + format_scientific(worst)});
  }
  return report(checks, csv, log);
}

int run_decay(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const std::vector<double> ts = config.grid.values();
  CsvWriter csv(out);
  write_preamble(csv, config);
  csv.row({"n", "t", "norm", "scaled", "error_estimate"});
  std::vector<Check> checks;
  for (int n : config.dimensions) {
    const InitialData data = config.data_at(n);
    const auto norms = parallel_map(ts.size(), [&](std::size_t i) { return l2_norm(ts[i], data); });
    std::vector<double> scaled(ts.size());
    bool converged = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double t = ts[i];
      const double v = norms[i].value;
      scaled[i] = n == 2 ? v * v / std::log(t) : v * std::pow(t, -decay_exponent(n));
      converged = converged && norms[i].converged;
      csv.row({std::to_string(n), format_number(t), format_number(v), format_number(scaled[i]),
               format_number(norms[i].error_estimate)});
    }
    const std::string tag = "n=" + std::to_string(n);
    checks.push_back({"quadrature " + tag, converged, converged ? "all points converged" : "non-converged points"});
    if (n == 2) {
      const double v = variation(scaled);
      checks.push_back({"log_band " + tag, v <= config.band_ratio,
                        "max/min of |u|^2/log t is " + format_number(v) + " (<= " +
                            format_number(config.band_ratio) + ")"});
      continue;
    }
    const double expected = decay_exponent(n);
    std::string detail;
    bool ok = false;
    try {
      DecaySeries series{ts, {}, tag};
      for (const auto& r : norms) series.values.push_back(r.value);
      const DecayFitResult fit = fit_decay(series);
      ok = std::abs(fit.slope - expected) <= config.tol;
      detail = "slope " + format_number(fit.slope) + " vs " + format_number(expected) + " +- " +
               format_number(config.tol) + ", max log residual " + format_scientific(fit.max_log_residual);
    } catch (const DomainError& e) {
      detail = e.what();
    }
    checks.push_back({"slope " + tag, ok, detail});
  }
  return report(checks, csv, log);
}

int run_profile(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const std::vector<double> ts = config.grid.values();
  ResidualOptions options;
  options.split = config.split_radius();
  options.method = config.method;
  CsvWriter csv(out);
  write_preamble(csv, config);
  csv.comment("split radius " + format_number(options.split));
  csv.row({"n", "t", "residual_norm", "residual_scaled", "I0", "error_estimate"});
  std::vector<Check> checks;
  for (int n : config.dimensions) {
    const InitialData data = config.data_at(n);
    const double i0 = data_constant(data);
    const auto residuals = parallel_map(ts.size(), [&](std::size_t i) { return residual_norm(ts[i], data, options); });
    std::vector<double> scaled(ts.size());
    bool accurate = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const NormResult& r = residuals[i];
      scaled[i] = r.value * std::pow(ts[i], n / 4.0);
      accurate = accurate && r.converged && r.error_estimate <= std::max(config.tol * r.value, 1e-300);
      csv.row({std::to_string(n), format_number(ts[i]), format_number(r.value), format_number(scaled[i]),
               format_number(i0), format_number(r.error_estimate)});
    }
    const std::string tag = "n=" + std::to_string(n);
    checks.push_back({"quadrature " + tag, accurate,
                      accurate ? "error estimates within tol" : "error estimate above tol or not converged"});
    const double v = variation(scaled);
    checks.push_back({"scaled_band " + tag, v <= config.band_ratio,
                      "max/min of residual t^{n/4} is " + format_number(v) + " (<= " +
                          format_number(config.band_ratio) + ")"});
    const double peak = *std::max_element(scaled.begin(), scaled.end());
    checks.push_back({"data_bound " + tag, peak <= config.i0_multiple * i0,
                      "max residual t^{n/4} " + format_number(peak) + " vs " + format_number(config.i0_multiple) +
                          " * I0 = " + format_number(config.i0_multiple * i0)});
  }
  return report(checks, csv, log);
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& log) {
  switch (config.command) {
    case Command::special: return run_special(config, out, log);
    case Command::lemmas: return run_lemmas(config, out, log);
    case Command::decay: return run_decay(config, out, log);
    case Command::profile: return run_profile(config, out, log);
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification lab for the wave equation with logarithmic damping"};
  app.require_subcommand(1);
  std::map<std::string, std::vector<std::string>> raw;
  std::string config_path;
  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::special, "Moment integrals, gamma ratio and the half-line identity"},
      {Command::lemmas, "Runs every inequality check and prints one verdict per line"},
      {Command::decay, "L2 norm decay rates per dimension"},
      {Command::profile, "Distance to the asymptotic profile"}};
  std::map<CLI::App*, Command> lookup;
  for (const auto& [command, description] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(command_name(command)), description);
    lookup[sub] = command;
    sub->add_option("--config", config_path, "Flat key = value settings file");
    for (const auto& key : known_keys()) {
      CLI::Option* opt = sub->add_option("--" + key, raw[key]);
      if (key == "log-grid") opt->expected(0, 1);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    Command command = Command::special;
    Settings flags;
    for (const auto& [sub, c] : lookup) {
      if (!sub->parsed()) continue;
      command = c;
      for (const auto& key : known_keys()) {
        if (sub->count("--" + key) == 0) continue;
        const auto& values = raw[key];
        std::string joined;
        for (std::size_t i = 0; i < values.size(); ++i) joined += (i ? "," : "") + values[i];
        flags[key] = key == "log-grid" && joined.empty() ? "true" : joined;
      }
    }
    const Settings file = config_path.empty() ? Settings{} : read_settings_file(config_path);
    const RunConfig config = resolve(command, file, flags);
    if (config.out == "-") return run_command(config, out, err);
    std::ofstream file_out(config.out);
    if (!file_out) throw ConfigError("out", "cannot open '" + config.out + "' for writing");
    const int code = run_command(config, file_out, err);
    file_out.close();
    if (!file_out) throw ConfigError("out", "failed writing '" + config.out + "'");
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedFamily& e) {
    err << "unsupported data: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const EvaluationError& e) {
    err << "numerical failure: " << e.what() << " at r = " << e.abscissa() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace logdamp::cli
