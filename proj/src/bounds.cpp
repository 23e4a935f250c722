#include "betatail/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "betatail/chernoff.hpp"
#include "betatail/golden_section.hpp"

namespace betatail::bounds {

namespace {

void require_non_negative(double eps, const char* where) {
  if (!(eps >= 0.0)) throw std::domain_error(std::string(where) + ": eps must be non-negative");
}

// Below this |t| the objective 2 psi(t) / t^2 is replaced by v + c v t / 3.
constexpr double kProxySeriesCutoff = 1e-4;
// Scan resolution: eight points per decade.
constexpr double kProxyScanStep = 1.333521432163324;  // 10^(1/8)

struct ProxyObjective {
  const RealBeta& params;
  SubGammaParams<double> sg;
  EvalConfig cfg;

  double operator()(double t) const {
    if (std::abs(t) < kProxySeriesCutoff) return sg.v + sg.c * sg.v * t / 3.0;
    return 2.0 * chernoff::cgf(params, t, cfg) / (t * t);
  }
};

}  // namespace

double sub_gamma_bound(const SubGammaParams<double>& sg, double eps) {
  require_non_negative(eps, "sub_gamma_bound");
  if (eps == 0.0) return 1.0;
  const double denom = sg.v + sg.c * eps / 3.0;
  if (!(denom > 0.0)) throw std::domain_error("sub_gamma_bound: v + c eps / 3 must be positive");
  return std::exp(-eps * eps / (2.0 * denom));
}

double bernstein_tail_bound(const RealBeta& p, double eps, TailSide side) {
  require_non_negative(eps, "bernstein_tail_bound");
  if (side == TailSide::Lower) return bernstein_tail_bound(reflect(p), eps, TailSide::Upper);
  auto sg = theorem1_params(p);
  if (p.beta < p.alpha) sg.c = 0.0;
  return sub_gamma_bound(sg, eps);
}

double subgaussian_optimal_proxy(const RealBeta& p, const EvalConfig& cfg) {
  cfg.validate();
  const ProxyObjective objective{p, theorem1_params(p), cfg};

  // Coarse log-spaced scan on each side of the origin, walking outwards until
  // the objective has fallen well below the best value seen on that side.
  double best_t = 0.0;
  double best_value = objective.sg.v;
  double best_prev = 0.0;
  double best_next = 0.0;
  for (double direction : {1.0, -1.0}) {
    std::vector<double> ts{0.0};
    std::vector<double> values{objective.sg.v};
    double side_best = -1.0;
    for (double mag = kProxySeriesCutoff; mag <= specfun::kMaxKummerArgument; mag *= kProxyScanStep) {
      const double t = direction * mag;
      const double value = objective(t);
      ts.push_back(t);
      values.push_back(value);
      side_best = std::max(side_best, value);
      if (value < 0.5 * side_best) break;
    }
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (values[i] > best_value) {
        best_value = values[i];
        best_t = ts[i];
        best_prev = ts[i - 1];
        best_next = i + 1 < ts.size() ? ts[i + 1] : ts[i];
      }
    }
  }
  if (best_t == 0.0) return best_value;

  const double lo = std::min(best_prev, best_next);
  const double hi = std::max(best_prev, best_next);
  const auto refined = golden_section_maximize(objective, lo, hi, 1e-10, cfg.max_iter);
  if (!refined.converged) throw ConvergenceError("subgaussian_optimal_proxy: refinement did not converge");
  return std::max({refined.value, best_value, objective.sg.v});
}

double subgaussian_bound(double proxy, double eps) {
  require_non_negative(eps, "subgaussian_bound");
  if (!(proxy > 0.0)) throw std::domain_error("subgaussian_bound: proxy must be positive");
  return std::exp(-eps * eps / (2.0 * proxy));
}

double subgaussian_bound(const RealBeta& p, double eps, const EvalConfig& cfg) {
  return subgaussian_bound(subgaussian_optimal_proxy(p, cfg), eps);
}

double log_upper_bound(double x) {
  if (!(x >= 0.0)) throw std::domain_error("log_upper_bound: x must be non-negative");
  return x - x * x / (2.0 * (1.0 + x / 3.0));
}

double support_width(const RealBeta& p, TailSide side) {
  const double s = p.alpha + p.beta;
  return side == TailSide::Upper ? p.beta / s : p.alpha / s;
}

double exact_tail(const RealBeta& p, double eps, TailSide side, const EvalConfig& cfg) {
  require_non_negative(eps, "exact_tail");
  const double room = support_width(p, side) - eps;
  if (room <= 0.0) return 0.0;
  // Upper: P{X > mean + eps} = I_{1 - mean - eps}(beta, alpha).
  // Lower: P{X < mean - eps} = I_{mean - eps}(alpha, beta).
  return side == TailSide::Upper ? specfun::regularized_incomplete_beta(p.beta, p.alpha, room, cfg)
                                 : specfun::regularized_incomplete_beta(p.alpha, p.beta, room, cfg);
}

}  // namespace betatail::bounds
