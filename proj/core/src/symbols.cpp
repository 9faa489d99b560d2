#include "logdamp/symbols.hpp"

#include <string>

#include "logdamp/errors.hpp"

namespace logdamp {

SymbolValues evaluate_symbols(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw DomainError("evaluate_symbols: radius must be finite and >= 0, got " +
                      std::to_string(r));
  }
  return evaluate_symbols_as(r);
}

std::pair<std::complex<double>, std::complex<double>> characteristic_roots(double r) {
  const SymbolValues s = evaluate_symbols(r);
  return {{-s.a, s.b}, {-s.a, -s.b}};
}

double log_ratio(double x) {
  if (!(x >= 0.0)) {
    throw DomainError("log_ratio: x must be >= 0, got " + std::to_string(x));
  }
  return std::log1p(x) / (1.0 + x);
}

}  // namespace logdamp
