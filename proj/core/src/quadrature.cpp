#include "logdamp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <sstream>
#include <string>

#include "logdamp/errors.hpp"

namespace logdamp {
namespace {

// QUADPACK qk15 abscissae and weights. Gauss nodes are the odd entries of kXgk.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
  double left;
  double right;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

double checked_eval(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "integrand returned " << y << " at r = " << x;
    throw EvaluationError(msg.str(), x);
  }
  return y;
}

Panel kronrod15(const Integrand& f, double left, double right) {
  const double centre = 0.5 * (left + right);
  const double half = 0.5 * (right - left);
  const double abs_half = std::abs(half);

  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};

  const double fc = checked_eval(f, centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const double f1 = checked_eval(f, centre - absc);
    const double f2 = checked_eval(f, centre + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const double f1 = checked_eval(f, centre - absc);
    const double f2 = checked_eval(f, centre + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  const double value = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {left, right, value, err};
}

// Pairwise summation keeps the result independent of heap order once the
// panels are sorted by position.
double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t mid = xs.size() / 2;
  return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

void validate(const QuadratureSpec& spec) {
  const bool infinite = std::isinf(spec.upper) && spec.upper > 0;
  const double end = infinite ? spec.truncation : spec.upper;
  if (!std::isfinite(spec.lower)) throw DomainError("quadrature: lower bound must be finite");
  if (infinite && !std::isfinite(spec.truncation)) {
    throw DomainError("quadrature: semi-infinite interval needs a finite truncation radius");
  }
  if (!std::isfinite(end) || !(spec.lower < end)) {
    throw DomainError("quadrature: need lower < upper (or truncation)");
  }
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
    throw DomainError("quadrature: tolerances must be positive");
  }
  if (!(spec.oscillation_frequency >= 0.0) || !std::isfinite(spec.oscillation_frequency)) {
    throw DomainError("quadrature: oscillation frequency must be finite and >= 0");
  }
  if (spec.max_panels == 0) throw DomainError("quadrature: max_panels must be positive");
  if (!(spec.tail_bound >= 0.0)) throw DomainError("quadrature: tail bound must be >= 0");
}

}  // namespace

QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec) {
  validate(spec);
  const bool infinite = std::isinf(spec.upper);
  const double end = infinite ? spec.truncation : spec.upper;
  const double tail = infinite ? spec.tail_bound : 0.0;

  std::vector<double> cuts{spec.lower};
  for (double b : spec.breakpoints) {
    if (b > spec.lower && b < end) cuts.push_back(b);
  }
  cuts.push_back(end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Half-period panelling.
  const std::size_t segments = cuts.size() - 1;
  std::vector<std::size_t> counts(segments, 1);
  std::size_t wanted = 0;
  for (std::size_t i = 0; i < segments; ++i) {
    if (spec.oscillation_frequency > 0.0) {
      const double halves = (cuts[i + 1] - cuts[i]) * spec.oscillation_frequency / M_PI;
      counts[i] = static_cast<std::size_t>(std::max(1.0, std::ceil(halves)));
    }
    wanted += counts[i];
  }
  bool budget_exceeded = false;
  if (wanted > spec.max_panels) {
    budget_exceeded = true;
    const double scale = static_cast<double>(spec.max_panels) / static_cast<double>(wanted);
    for (auto& c : counts) {
      c = std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(c) * scale));
    }
  }

  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i < segments; ++i) {
    const double width = (cuts[i + 1] - cuts[i]) / static_cast<double>(counts[i]);
    for (std::size_t k = 0; k < counts[i]; ++k) {
      const double left = cuts[i] + width * static_cast<double>(k);
      const double right = (k + 1 == counts[i]) ? cuts[i + 1] : left + width;
      Panel p = kronrod15(f, left, right);
      total += p.value;
      total_err += p.error;
      heap.push_back(p);
    }
  }
  std::make_heap(heap.begin(), heap.end(), ByError{});

  auto target = [&](double value) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };
  auto settle = [&]() {
    std::vector<Panel> all = heap;
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.left < y.left; });
    std::vector<double> values(all.size());
    std::vector<double> errors(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      values[i] = all[i].value;
      errors[i] = all[i].error;
    }
    total = pairwise_sum(values);
    total_err = pairwise_sum(errors);
  };

  bool converged = false;
  while (true) {
    if (total_err + tail <= target(total)) {
      settle();
      if (total_err + tail <= target(total)) {
        converged = !budget_exceeded;
        break;
      }
    }
    if (heap.empty() || heap.size() + frozen.size() + 1 > spec.max_panels) break;

    std::pop_heap(heap.begin(), heap.end(), ByError{});
    const Panel worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.left + worst.right);
    const double scale = std::max(std::abs(worst.left), std::abs(worst.right));
    if (!(mid > worst.left && mid < worst.right) || worst.right - worst.left <= 8.0 * kEps * scale) {
      frozen.push_back(worst);
      continue;
    }
    const Panel lo = kronrod15(f, worst.left, mid);
    const Panel hi = kronrod15(f, mid, worst.right);
    total += lo.value + hi.value - worst.value;
    total_err += lo.error + hi.error - worst.error;
    heap.push_back(lo);
    std::push_heap(heap.begin(), heap.end(), ByError{});
    heap.push_back(hi);
    std::push_heap(heap.begin(), heap.end(), ByError{});
  }
  if (!converged) settle();

  QuadratureResult result;
  result.value = total;
  result.error_estimate = total_err + tail;
  result.panels_used = heap.size() + frozen.size();
  result.converged = converged;
  return result;
}

double truncation_tail_bound(double t, double p, double radius) {
  const double q = std::max(1.0, 0.5 * (p + 1.0));
  if (!(t > q)) {
    throw DomainError("truncation_tail_bound: need t > max(1, (p+1)/2)");
  }
  if (!(radius >= 1.0)) throw DomainError("truncation_tail_bound: need R >= 1");
  const double excess = t - q;
  return std::exp(-excess * std::log1p(radius * radius)) / (2.0 * excess);
}

double truncation_radius(double t, double p, double tail_tol) {
  if (!std::isfinite(t) || !std::isfinite(p) || !(t > 0.5 * (p + 1.0) + 1.0) || !(t > 1.0)) {
    throw DomainError("truncation_radius: need t > (p+1)/2 + 1 and t > 1");
  }
  if (!(tail_tol > 0.0)) throw DomainError("truncation_radius: tail tolerance must be positive");
  const double q = std::max(1.0, 0.5 * (p + 1.0));
  const double excess = t - q;
  const double needed = -std::log(2.0 * excess * tail_tol) / excess;  // log(1+R^2)
  double radius = needed <= std::log(2.0) ? 1.0 : std::sqrt(std::expm1(needed));
  radius = std::max(radius, 1.0);
  while (truncation_tail_bound(t, p, radius) > tail_tol) {
    radius *= 1.0 + 1e-12;
  }
  return radius;
}

double support_tail_bound(double t, double p, double rho) {
  if (!(rho > 0.0)) throw DomainError("support_tail_bound: need rho > 0");
  if (rho >= 1.0) return truncation_tail_bound(t, p, rho);
  const double inner = std::exp(-t * std::log1p(rho * rho)) * std::max(std::pow(rho, p), 1.0) * (1.0 - rho);
  return inner + truncation_tail_bound(t, p, 1.0);
}

double support_radius(double t, double p, double tail_tol) {
  const double outer = [&] {
    if (!(t > 0.5 * (p + 1.0) + 1.0) || !(t > 1.0)) {
      throw DomainError("support_radius: need t > (p+1)/2 + 1 and t > 1");
    }
    return truncation_tail_bound(t, p, 1.0);
  }();
  if (!(tail_tol > 0.0)) throw DomainError("support_radius: tail tolerance must be positive");
  if (outer > tail_tol) return truncation_radius(t, p, tail_tol);

  if (support_tail_bound(t, p, 1e-12) <= tail_tol) return 1e-12;
  // The bound is decreasing in rho; bisect in log scale.
  double lo = 1e-12;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi > lo * (1.0 + 1e-12); ++i) {
    const double mid = std::sqrt(lo * hi);
    if (support_tail_bound(t, p, mid) <= tail_tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> damping_breakpoints(double t, double limit) {
  std::vector<double> points;
  if (!(t > 1.0)) return points;
  const double s = 1.0 / std::sqrt(t);
  for (double x = 0.25 * s; x < limit; x *= 2.0) {
    points.push_back(x);
  }
  return points;
}

}  // namespace logdamp
