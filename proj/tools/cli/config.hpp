#pragma once

// Run configuration for the logdamp tool. Every setting has one key, used both
// as the long flag (--t-min) and in config files (t-min = 100). Files are flat
// "key = value" lines; '#' starts a comment. Precedence: flag > file > default.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logdamp/modes.hpp"
#include "logdamp/norms.hpp"

namespace logdamp::cli {

/// Invalid configuration; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Command { special, lemmas, decay, profile };

Command parse_command(std::string_view name);
std::string_view command_name(Command command);

struct TimeGrid {
  double t_min = 1.0;
  double t_max = 10.0;
  int points = 2;
  bool log_spaced = true;

  std::vector<double> values() const;
};

struct DataSettings {
  DataFamily family = DataFamily::zero;
  double amplitude = 1.0;
  double width = 1.0;

  InitialDataSpec at_dimension(int n) const;
};

using Settings = std::map<std::string, std::string>;

struct RunConfig {
  Command command = Command::special;
  std::vector<int> dimensions;
  TimeGrid grid;
  double tol = 0.0;
  std::string out = "-";
  std::uint64_t seed = 42;
  std::vector<double> orders;     // moment orders p (special)
  double i0_multiple = 1.0;       // profile: residual t^{n/4} <= i0_multiple * I_0
  double band_ratio = 1.0;        // max/min allowed for scaled bands
  std::optional<double> split;    // low/high band radius; computed when unset
  ResidualMethod method = ResidualMethod::direct_difference;
  DataSettings position;
  DataSettings velocity;

  static RunConfig defaults(Command command);

  /// Applies one key = value setting; throws ConfigError naming the key.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  /// Sorted key=value lines of every setting that affects results.
  std::string canonical() const;
  /// FNV-1a of canonical().
  std::uint64_t hash() const;

  InitialData data_at(int n) const;
  double split_radius() const;
};

/// Keys accepted by RunConfig::set, in documentation order.
const std::vector<std::string>& known_keys();

/// Parses a flat key = value file. Throws ConfigError for unreadable files,
/// malformed lines and unknown keys.
Settings read_settings_file(const std::string& path);

/// defaults(command), then file settings, then flag settings.
RunConfig resolve(Command command, const Settings& file, const Settings& flags);

}  // namespace logdamp::cli
