#pragma once

// Minimal CSV emitter: comma separator, '.' decimal point, '#' comment lines,
// shortest round-trip number formatting. Fields containing separators or
// quotes are quoted RFC 4180 style.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace logdamp::cli {

std::string format_number(double x);
std::string format_optional(const std::optional<double>& x);
/// Fixed six-digit scientific notation, for human-facing report columns.
std::string format_scientific(double x);
std::string format_hash(std::uint64_t hash);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace logdamp::cli
