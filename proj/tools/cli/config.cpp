#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "logdamp/errors.hpp"

namespace logdamp::cli {
namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
  std::vector<std::string> items;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(key, "empty list entry in '" + value + "'");
    items.push_back(item);
  }
  if (items.empty()) throw ConfigError(key, "list must not be empty");
  return items;
}

double parse_real(const std::string& key, const std::string& value) {
  double x = 0.0;
  const char* first = value.data();
  const char* last = first + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) throw ConfigError(key, "expected a number, got '" + value + "'");
  return x;
}

template <class Int>
Int parse_integer(const std::string& key, const std::string& value) {
  Int x{};
  const char* first = value.data();
  const char* last = first + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) throw ConfigError(key, "expected an integer, got '" + value + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(key, "expected true/false, got '" + value + "'");
}

std::string format_real(double x) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, ptr);
}

template <class T, class Fn>
std::string join(const std::vector<T>& items, Fn format) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) s += ',';
    s += format(items[i]);
  }
  return s;
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, message);
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "special") return Command::special;
  if (name == "lemmas") return Command::lemmas;
  if (name == "decay") return Command::decay;
  if (name == "profile") return Command::profile;
  throw ConfigError("command", "unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::special: return "special";
    case Command::lemmas: return "lemmas";
    case Command::decay: return "decay";
    case Command::profile: return "profile";
  }
  return "special";
}

std::vector<double> TimeGrid::values() const {
  std::vector<double> ts(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / (points - 1);
    ts[i] = log_spaced ? std::exp(std::log(t_min) + s * (std::log(t_max) - std::log(t_min)))
                       : t_min + s * (t_max - t_min);
  }
  ts.front() = t_min;
  ts.back() = t_max;
  return ts;
}

InitialDataSpec DataSettings::at_dimension(int n) const {
  return family == DataFamily::gaussian ? InitialDataSpec::gaussian(amplitude, width, n)
                                        : InitialDataSpec::zero(n);
}

RunConfig RunConfig::defaults(Command command) {
  RunConfig c;
  c.command = command;
  c.velocity.family = DataFamily::gaussian;
  switch (command) {
    case Command::special:
      c.dimensions = {1};
      c.grid = {1.0, 1e6, 13, true};
      c.tol = 1e-10;
      c.orders = {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0};
      c.band_ratio = 1.2;
      break;
    case Command::lemmas:
      c.dimensions = {1, 2, 3};
      c.grid = {1e2, 1e4, 3, true};
      c.tol = 1e-10;
      c.orders = {-1.0, 0.0, 1.0, 3.0};
      c.band_ratio = 1.5;
      break;
    case Command::decay:
      c.dimensions = {1, 2, 3};
      c.grid = {1e2, 1e5, 20, true};
      c.tol = 0.05;
      c.band_ratio = 1.25;
      break;
    case Command::profile:
      c.dimensions = {1, 2, 3};
      c.grid = {1e2, 1e4, 9, true};
      c.tol = 1e-8;
      c.band_ratio = 3.0;
      break;
  }
  return c;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "dim",        "t-min",        "t-max",       "t-points",    "log-grid",
      "tol",        "out",          "seed",        "p",           "i0-multiple",
      "band-ratio", "split",        "method",      "u0-family",   "u0-amplitude",
      "u0-width",   "u1-family",    "u1-amplitude", "u1-width"};
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "dim") {
    dimensions.clear();
    for (const auto& item : split_list(key, value)) dimensions.push_back(parse_integer<int>(key, item));
  } else if (key == "t-min") {
    grid.t_min = parse_real(key, value);
  } else if (key == "t-max") {
    grid.t_max = parse_real(key, value);
  } else if (key == "t-points") {
    grid.points = parse_integer<int>(key, value);
  } else if (key == "log-grid") {
    grid.log_spaced = parse_bool(key, value);
  } else if (key == "tol") {
    tol = parse_real(key, value);
  } else if (key == "out") {
    require(!value.empty(), key, "output path must not be empty");
    out = value;
  } else if (key == "seed") {
    seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "p") {
    orders.clear();
    for (const auto& item : split_list(key, value)) orders.push_back(parse_real(key, item));
  } else if (key == "i0-multiple") {
    i0_multiple = parse_real(key, value);
  } else if (key == "band-ratio") {
    band_ratio = parse_real(key, value);
  } else if (key == "split") {
    if (value == "auto") {
      split.reset();
    } else {
      split = parse_real(key, value);
    }
  } else if (key == "method") {
    if (value == "direct") {
      method = ResidualMethod::direct_difference;
    } else if (value == "remainder") {
      method = ResidualMethod::remainder_sum;
    } else {
      throw ConfigError(key, "expected 'direct' or 'remainder', got '" + value + "'");
    }
  } else if (key == "u0-family" || key == "u1-family") {
    DataSettings& target = key[1] == '0' ? position : velocity;
    try {
      target.family = parse_family(value);
    } catch (const UnsupportedFamily& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "u0-amplitude" || key == "u1-amplitude") {
    (key[1] == '0' ? position : velocity).amplitude = parse_real(key, value);
  } else if (key == "u0-width" || key == "u1-width") {
    (key[1] == '0' ? position : velocity).width = parse_real(key, value);
  } else {
    throw ConfigError(key, "unknown setting");
  }
}

void RunConfig::validate() const {
  require(!dimensions.empty(), "dim", "at least one dimension is required");
  for (int n : dimensions) require(n >= 1 && n <= 16, "dim", "dimensions must lie in [1, 16]");
  require(std::isfinite(grid.t_min) && grid.t_min > 0.0, "t-min", "must be finite and > 0");
  require(std::isfinite(grid.t_max), "t-max", "must be finite");
  require(grid.t_max > grid.t_min, "t-max", "must exceed t-min");
  require(grid.points >= 2, "t-points", "a time grid needs at least 2 points");
  require(grid.points <= 100000, "t-points", "at most 100000 points");
  require(std::isfinite(tol) && tol >= 0.0, "tol", "must be finite and >= 0");
  require(std::isfinite(i0_multiple) && i0_multiple > 0.0, "i0-multiple", "must be finite and > 0");
  require(std::isfinite(band_ratio) && band_ratio >= 1.0, "band-ratio", "must be finite and >= 1");
  if (split) require(std::isfinite(*split) && *split > 0.0, "split", "must be finite and > 0");
  if (command == Command::special) {
    require(!orders.empty(), "p", "at least one order is required");
    for (double p : orders) require(std::isfinite(p) && p >= 0.0, "p", "orders must be finite and >= 0");
  }
  const std::pair<const DataSettings*, std::string> data[] = {{&position, "u0"}, {&velocity, "u1"}};
  for (const auto& [settings, prefix] : data) {
    if (settings->family != DataFamily::gaussian) continue;
    require(std::isfinite(settings->amplitude), prefix + "-amplitude", "must be finite");
    require(std::isfinite(settings->width) && settings->width > 0.0, prefix + "-width", "must be finite and > 0");
  }
}

std::string RunConfig::canonical() const {
  Settings s;
  s["command"] = std::string(command_name(command));
  s["dim"] = join(dimensions, [](int n) { return std::to_string(n); });
  s["t-min"] = format_real(grid.t_min);
  s["t-max"] = format_real(grid.t_max);
  s["t-points"] = std::to_string(grid.points);
  s["log-grid"] = grid.log_spaced ? "true" : "false";
  s["tol"] = format_real(tol);
  s["seed"] = std::to_string(seed);
  s["p"] = join(orders, format_real);
  s["i0-multiple"] = format_real(i0_multiple);
  s["band-ratio"] = format_real(band_ratio);
  s["split"] = split ? format_real(*split) : "auto";
  s["method"] = method == ResidualMethod::direct_difference ? "direct" : "remainder";
  const std::pair<const DataSettings*, std::string> data[] = {{&position, "u0"}, {&velocity, "u1"}};
  for (const auto& [settings, prefix] : data) {
    s[prefix + "-family"] = std::string(family_name(settings->family));
    s[prefix + "-amplitude"] = format_real(settings->amplitude);
    s[prefix + "-width"] = format_real(settings->width);
  }
  std::string text;
  for (const auto& [key, value] : s) text += key + "=" + value + "\n";
  return text;
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

InitialData RunConfig::data_at(int n) const {
  InitialData data{position.at_dimension(n), velocity.at_dimension(n)};
  data.validate();
  return data;
}

double RunConfig::split_radius() const { return split ? *split : low_band_radius(); }

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  Settings settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", path + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key.empty() ? "config" : key, "unknown setting in " + path);
    }
    settings[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return settings;
}

RunConfig resolve(Command command, const Settings& file, const Settings& flags) {
  RunConfig config = RunConfig::defaults(command);
  for (const auto& [key, value] : file) config.set(key, value);
  for (const auto& [key, value] : flags) config.set(key, value);
  config.validate();
  return config;
}

}  // namespace logdamp::cli
