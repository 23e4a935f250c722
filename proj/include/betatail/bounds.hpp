#pragma once

// Closed-form tail bounds for X ~ Beta(alpha, beta) and the exact tails they
// are measured against.

#include "betatail/moments.hpp"
#include "betatail/specfun.hpp"

namespace betatail {

/// (v, c) of a sub-gamma bound exp(-eps^2 / (2 (v + c eps / 3))).
template <typename Scalar>
struct SubGammaParams {
  Scalar v;
  Scalar c;
};

enum class TailSide { Upper, Lower };

namespace bounds {

/// v = Var[X], c = 2 (beta - alpha) / ((alpha+beta)(alpha+beta+2)) = mu_3 / mu_2.
template <typename Scalar>
SubGammaParams<Scalar> theorem1_params(const BetaParams<Scalar>& p) {
  const Scalar s = p.alpha + p.beta;
  Scalar v = p.alpha * p.beta / Scalar(s * s * Scalar(s + 1));
  Scalar c = Scalar(2 * Scalar(p.beta - p.alpha)) / Scalar(s * Scalar(s + 2));
  return {std::move(v), std::move(c)};
}

double sub_gamma_bound(const SubGammaParams<double>& sg, double eps);

/// Upper tail uses the sub-gamma form when beta >= alpha and the Gaussian
/// form otherwise; the lower tail is the upper tail of Beta(beta, alpha).
double bernstein_tail_bound(const RealBeta& p, double eps, TailSide side);

/// sup over t != 0 of 2 psi(t) / t^2, with psi the cumulant generating
/// function of X - E[X].
double subgaussian_optimal_proxy(const RealBeta& p, const EvalConfig& cfg = {});

double subgaussian_bound(double proxy, double eps);
double subgaussian_bound(const RealBeta& p, double eps, const EvalConfig& cfg = {});

/// x - x^2 / (2 (1 + x/3)). Despite the name this sits below log(1 + x) for
/// x > 0: the difference has derivative x^2 (x+9) / (2 (x+1) (x+3)^2) >= 0.
double log_upper_bound(double x);

/// Width of the support of X - E[X] on the given side.
double support_width(const RealBeta& p, TailSide side);

/// P{X > E[X] + eps} or P{X < E[X] - eps} from the incomplete beta function.
double exact_tail(const RealBeta& p, double eps, TailSide side, const EvalConfig& cfg = {});

}  // namespace bounds
}  // namespace betatail
