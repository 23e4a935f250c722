#pragma once

// Special-function kernels used by the moment, bound and Chernoff modules.
//
// Real-valued kernels work in double precision. The Pochhammer symbol and the
// terminating Gauss series are templated on the scalar so that the exact
// (rational) path and the numeric path share one implementation.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "betatail/rational.hpp"

namespace betatail {

/// Raised when a series or continued fraction fails to reach its tolerance
/// within the iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct EvalConfig {
  double rel_tol = 1e-12;
  int max_iter = 10000;

  /// Throws std::invalid_argument unless 0 < rel_tol < 1e-6 and max_iter >= 100.
  void validate() const;
};

namespace specfun {

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), with (x)_0 = 1.
template <typename Scalar>
Scalar pochhammer(const Scalar& x, std::uint32_t k) {
  Scalar result(1);
  for (std::uint32_t i = 0; i < k; ++i) {
    result *= Scalar(x + Scalar(i));
  }
  return result;
}

double log_gamma(double x);

/// log B(a, b).
double log_beta(double a, double b);

/// I_x(a, b), the Beta(a, b) cumulative distribution function at x.
double regularized_incomplete_beta(double a, double b, double x, const EvalConfig& cfg = {});

/// Confluent hypergeometric series 1F1(a; c; t).
double kummer_1f1(double a, double c, double t, const EvalConfig& cfg = {});

/// log 1F1(a; c; t) for a > 0 and c > 0 (and c - a > 0 when t < 0), where all
/// series terms are positive. Safe for arguments whose value overflows a double.
double log_kummer_1f1(double a, double c, double t, const EvalConfig& cfg = {});

/// Largest |t| accepted by the 1F1 kernels.
inline constexpr double kMaxKummerArgument = 1e5;

/// Exact 2F1(a, -d; c; z) = sum_{k=0}^{d} (a)_k (-d)_k / ((c)_k k!) z^k.
Rational gauss_2f1_terminating(const Rational& a, std::uint32_t d, const Rational& c,
                               const Rational& z);

}  // namespace specfun
}  // namespace betatail
