#include "betatail/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace betatail {

void EvalConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-6)) {
    throw std::invalid_argument("EvalConfig: rel_tol must lie in (0, 1e-6)");
  }
  if (max_iter < 100) {
    throw std::invalid_argument("EvalConfig: max_iter must be at least 100");
  }
}

namespace specfun {

namespace {

// Lanczos approximation, g = 671/128, 14 terms.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

double lanczos_log_gamma(double x) {
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : kLanczos) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

// zeta(k) for k = 2..kZetaTerms+1, by direct summation plus an
// Euler-Maclaurin tail at N = 20.
constexpr int kZetaTerms = 40;

std::array<double, kZetaTerms + 2> make_zeta_table() {
  std::array<double, kZetaTerms + 2> z{};
  constexpr double n_cut = 20.0;
  constexpr std::array<double, 5> bernoulli_over_factorial = {
      1.0 / 6.0 / 2.0, -1.0 / 30.0 / 24.0, 1.0 / 42.0 / 720.0, -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0};
  for (int k = 2; k < kZetaTerms + 2; ++k) {
    double sum = 0.0;
    for (int n = 19; n >= 1; --n) sum += std::pow(static_cast<double>(n), -k);
    double tail = std::pow(n_cut, 1.0 - k) / (k - 1) + 0.5 * std::pow(n_cut, -k);
    double rising = k;  // (k)_{2j-1}
    for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
      tail += bernoulli_over_factorial[j] * rising * std::pow(n_cut, -k - 2.0 * j - 1.0);
      rising *= (k + 2.0 * j + 1.0) * (k + 2.0 * j + 2.0);
    }
    z[k] = sum + tail;
  }
  return z;
}

// log Gamma(1 + z) for |z| <= 0.25:
//   -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k.
double log_gamma_1p_series(double z) {
  static const auto zeta = make_zeta_table();
  double sum = 0.0;
  double power = -z;
  for (int k = 2; k < kZetaTerms + 2; ++k) {
    power *= -z;
    sum += zeta[k] * power / k;
  }
  return -std::numbers::egamma * z + sum;
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x, const EvalConfig& cfg) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= cfg.max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= 0.25 * cfg.rel_tol) return h;
  }
  throw ConvergenceError("regularized_incomplete_beta: continued fraction did not converge");
}

// Bound on every later term ratio of the 1F1 series once past index k.
double kummer_ratio_cap(double a, double c, double t, int k) {
  return std::abs(t) / (k + 2.0) * std::max(1.0, std::abs(a) / c);
}

void check_kummer_domain(double c, double t) {
  if (!(c > 0.0)) throw std::domain_error("kummer_1f1: c must be positive");
  if (!(std::abs(t) <= kMaxKummerArgument)) {
    throw std::domain_error("kummer_1f1: |t| exceeds the supported range");
  }
}

// log of a positive-term 1F1 series (a > 0, c > 0, t >= 0), summed with
// periodic rescaling so that huge values do not overflow.
double log_kummer_positive(double a, double c, double t, const EvalConfig& cfg) {
  if (t == 0.0) return 0.0;
  constexpr double kRescale = 1e280;
  const double log_rescale = std::log(kRescale);
  double log_scale = 0.0;
  double term = 1.0;
  double sum = 1.0;
  const int budget = cfg.max_iter + static_cast<int>(4.0 * t);
  for (int k = 0; k < budget; ++k) {
    term *= (a + k) / (c + k) * t / (k + 1.0);
    sum += term;
    if (sum > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_scale += log_rescale;
    }
    const double cap = kummer_ratio_cap(a, c, t, k);
    if (cap < 1.0 && term * cap / (1.0 - cap) <= 0.5 * cfg.rel_tol * sum) {
      return log_scale + std::log(sum);
    }
  }
  throw ConvergenceError("kummer_1f1: series did not converge");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || std::isinf(x)) throw std::domain_error("log_gamma: argument must be positive and finite");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (std::abs(x - 1.0) <= 0.25) return log_gamma_1p_series(x - 1.0);
  if (std::abs(x - 2.0) <= 0.25) return std::log1p(x - 2.0) + log_gamma_1p_series(x - 2.0);
  return lanczos_log_gamma(x);
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

double regularized_incomplete_beta(double a, double b, double x, const EvalConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("regularized_incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("regularized_incomplete_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x, cfg) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x, cfg) / b;
}

double log_kummer_1f1(double a, double c, double t, const EvalConfig& cfg) {
  cfg.validate();
  check_kummer_domain(c, t);
  if (!(a > 0.0)) throw std::domain_error("log_kummer_1f1: a must be positive");
  if (t >= 0.0) return log_kummer_positive(a, c, t, cfg);
  if (c == a) return t;
  if (!(c > a)) throw std::domain_error("log_kummer_1f1: negative t requires c > a");
  // Kummer's transformation 1F1(a; c; t) = e^t 1F1(c - a; c; -t).
  return t + log_kummer_positive(c - a, c, -t, cfg);
}

double kummer_1f1(double a, double c, double t, const EvalConfig& cfg) {
  cfg.validate();
  check_kummer_domain(c, t);
  if (a > 0.0 && (t >= 0.0 || c >= a)) {
    const double value = std::exp(log_kummer_1f1(a, c, t, cfg));
    if (std::isinf(value)) throw std::overflow_error("kummer_1f1: value overflows double");
    return value;
  }
  // Signed terms: sum directly and refuse results swamped by cancellation.
  double term = 1.0;
  double sum = 1.0;
  double largest = 1.0;
  for (int k = 0; k < cfg.max_iter + static_cast<int>(4.0 * std::abs(t)); ++k) {
    term *= (a + k) / (c + k) * t / (k + 1.0);
    sum += term;
    largest = std::max(largest, std::abs(term));
    const double cap = kummer_ratio_cap(a, c, t, k);
    if (term == 0.0 || (cap < 1.0 && std::abs(term) * cap / (1.0 - cap) <= 0.5 * cfg.rel_tol * std::abs(sum))) {
      if (largest * std::numeric_limits<double>::epsilon() * 16.0 > cfg.rel_tol * std::abs(sum)) {
        throw ConvergenceError("kummer_1f1: cancellation exceeds the requested tolerance");
      }
      return sum;
    }
  }
  throw ConvergenceError("kummer_1f1: series did not converge");
}

Rational gauss_2f1_terminating(const Rational& a, std::uint32_t d, const Rational& c, const Rational& z) {
  Rational term(1);
  Rational sum(1);
  for (std::uint32_t k = 0; k < d; ++k) {
    Rational denom = c + k;
    if (denom == 0) throw std::domain_error("gauss_2f1_terminating: (c)_k vanishes");
    term *= (a + k) * (Rational(k) - d) * z;
    term /= denom * (k + 1);
    sum += term;
  }
  return sum;
}

}  // namespace specfun
}  // namespace betatail
