#pragma once

// Central moments of the Beta distribution.
//
// Everything here is templated on the scalar: instantiate with Rational for
// exact arithmetic or with double for the numeric path. The order-2 recursion
//
//   mu_d = (d-1)(beta-alpha) / ((alpha+beta)(alpha+beta+d-1)) * mu_{d-1}
//        + (d-1) alpha beta / ((alpha+beta)^2 (alpha+beta+d-1)) * mu_{d-2}
//
// is the production route; the binomial and hypergeometric forms are kept as
// independent oracles.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "betatail/rational.hpp"
#include "betatail/specfun.hpp"

namespace betatail {

template <typename Scalar>
struct BetaParams {
  Scalar alpha;
  Scalar beta;

  Scalar mean() const { return Scalar(alpha / Scalar(alpha + beta)); }
};

using ExactBeta = BetaParams<Rational>;
using RealBeta = BetaParams<double>;

/// Validating constructor; throws std::domain_error unless alpha, beta > 0.
template <typename Scalar>
BetaParams<Scalar> make_beta(Scalar alpha, Scalar beta) {
  if (!(alpha > 0) || !(beta > 0)) {
    throw std::domain_error("Beta parameters must be positive");
  }
  return {std::move(alpha), std::move(beta)};
}

inline RealBeta to_real(const ExactBeta& p) { return {to_double(p.alpha), to_double(p.beta)}; }
inline RealBeta to_real(const RealBeta& p) { return p; }

/// X' = 1 - X is Beta(beta, alpha).
template <typename Scalar>
BetaParams<Scalar> reflect(const BetaParams<Scalar>& p) {
  return {p.beta, p.alpha};
}

namespace moments {

inline constexpr std::uint32_t kMaxOrder = 10000;

/// Central moments mu_0..mu_dmax together with m_d = mu_d / d!.
/// Immutable once built.
template <typename Scalar>
class MomentTable {
 public:
  MomentTable(BetaParams<Scalar> params, std::vector<Scalar> central)
      : params_(std::move(params)), central_(std::move(central)) {
    normalized_.reserve(central_.size());
    Scalar factorial(1);
    for (std::size_t d = 0; d < central_.size(); ++d) {
      if (d > 0) factorial *= Scalar(static_cast<double>(d));
      normalized_.push_back(Scalar(central_[d] / factorial));
    }
  }

  const BetaParams<Scalar>& params() const { return params_; }
  std::uint32_t max_order() const { return static_cast<std::uint32_t>(central_.size() - 1); }
  const Scalar& central(std::uint32_t d) const { return central_.at(d); }
  const Scalar& normalized(std::uint32_t d) const { return normalized_.at(d); }
  const std::vector<Scalar>& central() const { return central_; }
  const std::vector<Scalar>& normalized() const { return normalized_; }

 private:
  BetaParams<Scalar> params_;
  std::vector<Scalar> central_;
  std::vector<Scalar> normalized_;
};

/// E[X^d] = (alpha)_d / (alpha+beta)_d.
template <typename Scalar>
Scalar raw_moment(const BetaParams<Scalar>& p, std::uint32_t d) {
  return Scalar(specfun::pochhammer(p.alpha, d) / specfun::pochhammer(Scalar(p.alpha + p.beta), d));
}

template <typename Scalar>
MomentTable<Scalar> central_moments_recursive(const BetaParams<Scalar>& p, std::uint32_t dmax) {
  if (dmax > kMaxOrder) {
    throw std::invalid_argument("central_moments_recursive: dmax exceeds 10000");
  }
  const Scalar s = p.alpha + p.beta;
  const Scalar skew = p.beta - p.alpha;
  const Scalar spread = Scalar(p.alpha * p.beta) / Scalar(s * s);
  std::vector<Scalar> mu;
  mu.reserve(dmax + 1);
  mu.push_back(Scalar(1));
  if (dmax >= 1) mu.push_back(Scalar(0));
  for (std::uint32_t d = 2; d <= dmax; ++d) {
    const Scalar k(static_cast<double>(d - 1));
    const Scalar denom = Scalar(s + k);
    Scalar next = k * skew / Scalar(s * denom) * mu[d - 1];
    next += k * spread / denom * mu[d - 2];
    mu.push_back(std::move(next));
  }
  return MomentTable<Scalar>(p, std::move(mu));
}

/// sum_k (-1)^{d-k} C(d,k) E[X^k] mean^{d-k}.
template <typename Scalar>
Scalar central_moment_binomial_oracle(const BetaParams<Scalar>& p, std::uint32_t d) {
  const Scalar mean = p.mean();
  Scalar sum(0);
  Scalar binom(1);
  for (std::uint32_t k = 0; k <= d; ++k) {
    if (k > 0) binom = Scalar(binom * Scalar(static_cast<double>(d - k + 1)) / Scalar(static_cast<double>(k)));
    Scalar term = binom * raw_moment(p, k);
    for (std::uint32_t j = 0; j < d - k; ++j) term *= mean;
    if ((d - k) % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

/// (-alpha/(alpha+beta))^d * 2F1(alpha, -d; alpha+beta; (alpha+beta)/alpha).
inline Rational central_moment_hypergeom_oracle(const ExactBeta& p, std::uint32_t d) {
  const Rational s = p.alpha + p.beta;
  Rational front(1);
  const Rational base = -p.alpha / s;
  for (std::uint32_t j = 0; j < d; ++j) front *= base;
  return front * specfun::gauss_2f1_terminating(p.alpha, d, s, Rational(s / p.alpha));
}

/// mu_d / mu_2^{d/2}, evaluated in double.
template <typename Scalar>
double standardized_moment(const BetaParams<Scalar>& p, std::uint32_t d) {
  if (d < 2) throw std::invalid_argument("standardized_moment: order must be at least 2");
  const auto table = central_moments_recursive(p, d);
  return to_double(table.central(d)) / std::pow(to_double(table.central(2)), 0.5 * d);
}

}  // namespace moments
}  // namespace betatail
