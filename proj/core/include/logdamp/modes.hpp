#pragma once

// Fourier-mode solution of u_tt + A u + L u_t = 0, L = log(I + A), for radial
// initial data with closed-form transforms, and its split into the profile
//
//   P_1 e^{-a t} sin(r t) / r
//
// plus five remainder terms K_1..K_5. The mean-value forms of K_4 and K_5 are
// replaced by the exact differences (1/b - 1/r) and (sin(bt) - sin(rt)), so
// the split is an identity at every (t, r).
//
// Fourier convention: f^(xi) = int e^{-i x.xi} f(x) dx.

#include <array>
#include <complex>
#include <span>
#include <string_view>

namespace logdamp {

using Complex = std::complex<double>;

enum class DataFamily { zero, gaussian };

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2) (2 for n = 1).
double sphere_area(int n);

/// Parses "zero" / "gaussian"; anything else throws UnsupportedFamily.
DataFamily parse_family(std::string_view name);
std::string_view family_name(DataFamily family);

/// amplitude * exp(-|x|^2 / (2 width^2)) on R^n, or the zero function.
struct InitialDataSpec {
  DataFamily family = DataFamily::zero;
  double amplitude = 0.0;
  double width = 1.0;
  int dimension = 1;

  static InitialDataSpec gaussian(double amplitude, double width, int dimension);
  static InitialDataSpec zero(int dimension);

  void validate() const;
  bool is_zero() const { return family == DataFamily::zero || amplitude == 0.0; }

  /// Radial Fourier transform amplitude (2 pi)^{n/2} width^n exp(-width^2 r^2 / 2).
  double transform(double r) const;
  /// Transform at the origin: the integral of the data.
  double mass() const;
  double l2_norm() const;
  double l1_norm() const;
  /// || (1 + |x|) f ||_{L^1}, the weighted norm ||f||_{1,1}.
  double weighted_l1_norm() const;
  /// |transform(r)| <= envelope_coefficient() * exp(-envelope_rate() r^2).
  double envelope_coefficient() const;
  double envelope_rate() const;
};

/// Initial position u_0 and velocity u_1, both on R^n with the same n.
struct InitialData {
  InitialDataSpec position;
  InitialDataSpec velocity;

  void validate() const;
  int dimension() const { return position.dimension; }
};

/// Decomposition of the velocity transform: u_1^ = A_1 - i B_1 + P_1.
struct DataDecomposition {
  double mass = 0.0;            // P_1
  double weighted_norm = 0.0;   // ||u_1||_{1,1}
  InitialDataSpec velocity;

  /// A_1(r) = u_1^(r) - P_1 (real for radial data).
  double oscillatory_part(double r) const;
  /// B_1 vanishes identically for real radial data.
  double odd_part(double /*r*/) const { return 0.0; }
};

/// Throws UnsupportedFamily if the family has no closed-form transform.
DataDecomposition decompose_velocity(const InitialDataSpec& velocity);

/// max over the radii of |A_1(r)| / (r ||u_1||_{1,1}): the fitted constant K
/// in |A_1(r)| <= K r ||u_1||_{1,1}. Radii must be positive.
double fitted_moment_constant(const DataDecomposition& decomposition,
                              std::span<const double> radii);

/// Logarithmic damping, or none (free wave, used for conservation checks).
enum class Damping { logarithmic, none };

/// u^(t, r). At r = 0 uses sin(b t)/b -> t.
Complex mode_solution(double t, double r, const InitialData& data,
                      Damping damping = Damping::logarithmic);

/// d/dt u^(t, r) = e^{-at} [u_1^ cos(bt) - ((a u_1^ + r^2 u_0^)/b) sin(bt)].
Complex mode_velocity(double t, double r, const InitialData& data,
                      Damping damping = Damping::logarithmic);

/// P_1 (1+r^2)^{-t/2} sin(r t)/r, equal to P_1 t at r = 0.
Complex profile_mode(double t, double r, double mass);

struct ModeDecomposition {
  double t = 0.0;
  double r = 0.0;
  Complex solution;
  Complex profile;
  std::array<Complex, 5> remainders{};
  double closure_residual = 0.0;  // |solution - profile - sum(remainders)|
  // closure_residual / scale(), computed before the common factor e^{-at} is
  // applied so that it stays meaningful when every term underflows.
  double relative_residual = 0.0;

  /// |solution| + |profile| + sum |K_j|, the scale for closure_residual.
  double scale() const;
  Complex remainder_sum() const;
};

/// Requires r > 0.
ModeDecomposition decompose_mode(double t, double r, const InitialData& data);

/// I_0 = ||u_0||_2 + ||u_1||_2 + ||u_0||_1 + ||(1+|x|) u_1||_1.
double data_constant(const InitialData& data);

/// sin(omega t) / omega with the limit t at omega = 0.
double sin_ratio(double omega, double t);

/// Largest radius in (0, 1] such that g(s) = log^2(1+s^2)/(4 s^2) <= 1/2 for all
/// s up to it, found by scanning and bisection. g peaks near 0.162, so the
/// result is 1.
double low_band_radius();

}  // namespace logdamp
