#pragma once

// Frequency symbols of u_tt + A u + log(I + A) u_t = 0 at radius r = |xi|.
//
// The characteristic roots of lambda^2 + log(1+r^2) lambda + r^2 = 0 are
// -a +- i b with
//   a = log(1+r^2) / 2,
//   b = r sqrt(1 - g),   g = log^2(1+r^2) / (4 r^2).
// g stays below 0.17 for every r > 0, so the roots are never real.

#include <cmath>
#include <complex>
#include <type_traits>
#include <utility>

namespace logdamp {

template <class Real>
struct BasicSymbolValues {
  Real r{};
  Real a{};  // damping symbol, >= 0
  Real b{};  // oscillation symbol, >= 0
  Real g{};  // log^2(1+r^2) / (4 r^2), in [0, 1)
  Real b_minus_r{};          // b - r without cancellation, <= 0
  Real inv_b_minus_inv_r{};  // 1/b - 1/r without cancellation, >= 0
};

using SymbolValues = BasicSymbolValues<double>;

namespace detail {

// Below this radius g is taken from its Taylor series r^2/4 - r^4/4 + 11 r^6/48.
inline constexpr double kSymbolSeriesRadius = 1e-4;

}  // namespace detail

/// Generic evaluation, used directly with extended-precision types by oracle
/// tests. No domain checking; see evaluate_symbols for the checked entry point.
template <class Real>
BasicSymbolValues<Real> evaluate_symbols_as(const Real& r) {
  using std::log1p;
  using std::sqrt;

  BasicSymbolValues<Real> s;
  s.r = r;
  if (r == Real(0)) {
    return s;
  }
  const Real r2 = r * r;
  s.a = log1p(r2) / 2;
  // The series only pays off in double; wider types evaluate g directly.
  if constexpr (std::is_same_v<Real, double> || std::is_same_v<Real, float>) {
    if (r < Real(detail::kSymbolSeriesRadius)) {
      s.g = r2 * (Real(1) / 4 + r2 * (Real(-1) / 4 + r2 * Real(11) / 48));
    } else {
      s.g = s.a * s.a / r2;
    }
  } else {
    s.g = s.a * s.a / r2;
  }
  const Real root = sqrt(Real(1) - s.g);
  s.b = r * root;
  s.b_minus_r = -r * s.g / (Real(1) + root);
  // (r - b) / (r b) = g / ((1 + root) root r); behaves like r/8 near 0.
  s.inv_b_minus_inv_r = s.g / ((Real(1) + root) * root * r);
  return s;
}

/// Checked symbol evaluation. Throws DomainError for negative or non-finite r.
SymbolValues evaluate_symbols(double r);

/// Characteristic roots (-a + i b, -a - i b).
std::pair<std::complex<double>, std::complex<double>> characteristic_roots(double r);

/// log(1+x) / (1+x); its maximum over x >= 0 is 1/e at x = e - 1.
double log_ratio(double x);

}  // namespace logdamp
