#include "betatail/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "betatail/golden_section.hpp"

namespace betatail::chernoff {

namespace {

// |t| up to which psi is summed from the moment series rather than 1F1.
constexpr double kSeriesRadius = 2.0;
constexpr std::uint32_t kSeriesOrder = 48;

// Truncation target for the exact log-derivative enclosure. phi >= 1 for a
// centred variable, so an absolute target is also a relative one.
constexpr double kEnclosureRemainder = 1e-30;

EvalConfig tightened(const EvalConfig& cfg) {
  EvalConfig out = cfg;
  out.rel_tol = std::min(cfg.rel_tol, 1e-14);
  return out;
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

// Bound on sum_{d > order} x^d / d! for 0 <= x < order + 2.
double exp_tail_bound(double x, std::uint32_t order) {
  if (x == 0.0) return 0.0;
  const double n = order + 1.0;
  const double ratio = x / (n + 1.0);
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return std::exp(n * std::log(x) - log_factorial(n)) / (1.0 - ratio);
}

}  // namespace

double centered_mgf(const RealBeta& p, double t, const EvalConfig& cfg) {
  const double mean = p.mean();
  return std::exp(-t * mean + specfun::log_kummer_1f1(p.alpha, p.alpha + p.beta, t, cfg));
}

double cgf(const RealBeta& p, double t, const EvalConfig& cfg) {
  if (t == 0.0) return 0.0;
  if (std::abs(t) <= kSeriesRadius) {
    const auto table = moments::central_moments_recursive(p, kSeriesOrder);
    double series = 0.0;
    for (std::uint32_t d = kSeriesOrder; d >= 2; --d) series = (series + table.normalized(d)) * t;
    return std::log1p(series * t);
  }
  return -t * p.mean() + specfun::log_kummer_1f1(p.alpha, p.alpha + p.beta, t, tightened(cfg));
}

ChernoffResult chernoff_exponent_numeric(const RealBeta& params, double eps, TailSide side,
                                         const EvalConfig& cfg) {
  cfg.validate();
  const RealBeta p = side == TailSide::Upper ? params : reflect(params);
  const double width = bounds::support_width(p, TailSide::Upper);
  if (!(eps >= 0.0) || !(eps < width)) {
    throw std::domain_error("chernoff_exponent_numeric: eps must lie in [0, support width)");
  }
  if (eps == 0.0) return {0.0, 0.0, true};

  auto objective = [&](double t) { return t * eps - cgf(p, t, cfg); };

  // Grow the bracket geometrically from the Gaussian guess until the concave
  // objective starts to decrease.
  const double v = bounds::theorem1_params(p).v;
  double before = 0.0;
  double prev = 0.0;
  double prev_value = 0.0;
  double next = std::min(0.5 * eps / v, 0.25 * specfun::kMaxKummerArgument);
  double next_value = objective(next);
  while (next_value > prev_value) {
    before = prev;
    prev = next;
    prev_value = next_value;
    next *= 2.0;
    if (next > specfun::kMaxKummerArgument) return {prev_value, prev, false};
    next_value = objective(next);
  }

  const auto best = golden_section_maximize(objective, before, next, 1e-12, cfg.max_iter);
  return {std::max(best.value, 0.0), best.x, best.converged};
}

double theorem2_exponent(const RealBeta& p, double eps) {
  const auto sg = bounds::theorem1_params(p);
  return eps * eps / (2.0 * sg.v) - sg.c * eps * eps * eps / (6.0 * sg.v * sg.v);
}

LogDerivativeEnclosure mgf_log_derivative(const ExactBeta& p, const Rational& t) {
  if (t < 0) throw std::domain_error("mgf_log_derivative: t must be non-negative");
  // |Z| <= r, hence |m_d| <= r^d / d!.
  const Rational mean = p.mean();
  const double r = to_double(mean > Rational(1, 2) ? mean : Rational(1 - mean)) * (1.0 + 1e-15);
  const double rt = r * to_double(t) * (1.0 + 1e-15);

  std::uint32_t order = 40;
  double phi_tail = exp_tail_bound(rt, order);
  double dphi_tail = r * exp_tail_bound(rt, order - 1);
  while (phi_tail > kEnclosureRemainder || dphi_tail > kEnclosureRemainder) {
    order += 8;
    if (order > moments::kMaxOrder) throw std::domain_error("mgf_log_derivative: t too large");
    phi_tail = exp_tail_bound(rt, order);
    dphi_tail = r * exp_tail_bound(rt, order - 1);
  }

  const auto table = moments::central_moments_recursive(p, order);
  Rational phi(0);
  Rational dphi(0);
  for (std::uint32_t d = order; d >= 1; --d) {
    phi = phi * t + table.normalized(d);
    dphi = dphi * t + table.normalized(d) * d;
  }
  phi = phi * t + 1;

  // Conversion to double is within one ulp; widen by a few.
  constexpr double kUlp = 4.0 * std::numeric_limits<double>::epsilon();
  const double phi_d = to_double(phi);
  const double dphi_d = to_double(dphi);
  const double phi_lo = phi_d * (1.0 - kUlp) - phi_tail;
  const double phi_hi = phi_d * (1.0 + kUlp) + phi_tail;
  const double num_lo = dphi_d - std::abs(dphi_d) * kUlp - dphi_tail;
  const double num_hi = dphi_d + std::abs(dphi_d) * kUlp + dphi_tail;
  if (!(phi_lo > 0.0)) throw std::logic_error("mgf_log_derivative: non-positive MGF enclosure");

  LogDerivativeEnclosure out;
  out.lower = num_lo / (num_lo >= 0.0 ? phi_hi : phi_lo);
  out.upper = num_hi / (num_hi >= 0.0 ? phi_lo : phi_hi);
  out.terms = order;
  return out;
}

double claim3_rhs(const RealBeta& p, double t) {
  const auto sg = bounds::theorem1_params(p);
  if (p.beta >= p.alpha) {
    if (sg.c * t >= 1.0) throw std::domain_error("claim3_rhs: t must stay below 1/c");
    return sg.v * t / (1.0 - sg.c * t);
  }
  return sg.v * t;
}

bool claim3_check(const ExactBeta& p, double t) {
  if (!(t >= 0.0)) throw std::domain_error("claim3_check: t must be non-negative");
  const double rhs = claim3_rhs(to_real(p), t);
  const auto lhs = mgf_log_derivative(p, Rational(t));
  return lhs.upper <= rhs + 1e-10;
}

double claim4_cumulant_bound(const SubGammaParams<double>& sg, double t) {
  if (!(t >= 0.0)) throw std::domain_error("claim4_cumulant_bound: t must be non-negative");
  if (sg.c <= 0.0) return 0.5 * sg.v * t * t;
  const double x = sg.c * t;
  if (x >= 1.0) throw std::domain_error("claim4_cumulant_bound: t must stay below 1/c");
  if (x < 0.1) {
    // -(x + log(1 - x)) / x^2 = sum_{k>=2} x^{k-2} / k
    double series = 0.0;
    for (int k = 40; k >= 2; --k) series = series * x + 1.0 / k;
    return sg.v * t * t * series;
  }
  return -sg.v * (x + std::log1p(-x)) / (sg.c * sg.c);
}

SubGammaParams<double> cumulant_bound_params(const RealBeta& p) {
  auto sg = bounds::theorem1_params(p);
  if (p.alpha > p.beta) sg.c = 0.0;
  return sg;
}

double t_best(const SubGammaParams<double>& sg, double eps) {
  if (!(eps >= 0.0)) throw std::domain_error("t_best: eps must be non-negative");
  return eps / (std::max(sg.c, 0.0) * eps + sg.v);
}

double relaxed_chernoff_exponent(const SubGammaParams<double>& sg, double eps) {
  if (!(eps >= 0.0)) throw std::domain_error("relaxed_chernoff_exponent: eps must be non-negative");
  if (sg.c <= 0.0) return eps * eps / (2.0 * sg.v);
  const double x = sg.c * eps / sg.v;
  if (x < 0.1) {
    // (x - log(1 + x)) / x^2 = sum_{k>=2} (-x)^{k-2} / k
    double series = 0.0;
    for (int k = 40; k >= 2; --k) series = series * (-x) + 1.0 / k;
    return eps * eps / sg.v * series;
  }
  return sg.v / (sg.c * sg.c) * (x - std::log1p(x));
}

}  // namespace betatail::chernoff
