#pragma once

// Moment and cumulant generating functions of the centred Beta variable
// Z = X - E[X], the numeric Cramer-Chernoff exponent, and checkable forms of
// the intermediate inequalities behind the sub-gamma bound.

#include "betatail/bounds.hpp"
#include "betatail/moments.hpp"

namespace betatail::chernoff {

struct ChernoffResult {
  double exponent = 0.0;  ///< psi*(eps) = sup_{t >= 0} (t eps - psi(t))
  double t_star = 0.0;
  bool converged = false;
};

/// phi(t) = E exp(t Z) = exp(-t mean) 1F1(alpha; alpha+beta; t).
double centered_mgf(const RealBeta& p, double t, const EvalConfig& cfg = {});

/// psi(t) = log phi(t). Small |t| goes through the moment series so that
/// psi keeps full relative precision near the origin.
double cgf(const RealBeta& p, double t, const EvalConfig& cfg = {});

/// Lower tails are handled by reflecting to Beta(beta, alpha).
/// Throws std::domain_error unless 0 <= eps < support width.
ChernoffResult chernoff_exponent_numeric(const RealBeta& p, double eps, TailSide side,
                                         const EvalConfig& cfg = {});

/// eps^2 / (2v) - c eps^3 / (6 v^2).
double theorem2_exponent(const RealBeta& p, double eps);

/// Two-sided enclosure of phi'(t) / phi(t) from the exactly summed moment
/// series plus a certified truncation remainder.
struct LogDerivativeEnclosure {
  double lower = 0.0;
  double upper = 0.0;
  std::uint32_t terms = 0;
};

LogDerivativeEnclosure mgf_log_derivative(const ExactBeta& p, const Rational& t);

/// phi'(t)/phi(t) <= v t / (1 - c t) when beta >= alpha (requires t < 1/c),
/// and phi'(t)/phi(t) <= v t when alpha > beta. Checked with 1e-10 slack.
bool claim3_check(const ExactBeta& p, double t);

/// The right-hand side used by claim3_check.
double claim3_rhs(const RealBeta& p, double t);

/// -v (c t + log(1 - c t)) / c^2, or v t^2 / 2 when c <= 0.
/// Throws std::domain_error for t >= 1/c when c > 0.
double claim4_cumulant_bound(const SubGammaParams<double>& sg, double t);

/// The sub-gamma parameters the cumulant bound is taken with: (v, c) when
/// beta >= alpha, (v, 0) otherwise.
SubGammaParams<double> cumulant_bound_params(const RealBeta& p);

/// eps / (c eps + v), the maximiser of t eps - claim4_cumulant_bound(t).
double t_best(const SubGammaParams<double>& sg, double eps);

/// (v/c^2) (x - log(1 + x)) with x = c eps / v; eps^2 / (2v) when c = 0.
double relaxed_chernoff_exponent(const SubGammaParams<double>& sg, double eps);

}  // namespace betatail::chernoff
