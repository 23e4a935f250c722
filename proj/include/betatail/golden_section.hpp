#pragma once

#include <cmath>

namespace betatail {

struct LineMaximum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Golden-section maximisation of a unimodal function on [lo, hi]. Stops when
/// the bracket is narrower than rel_width * max(1, |x|).
template <typename Function>
LineMaximum golden_section_maximize(Function&& f, double lo, double hi, double rel_width, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  LineMaximum result;
  for (result.iterations = 0; result.iterations < max_iter; ++result.iterations) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_width * std::max(1.0, std::abs(mid))) {
      result.converged = true;
      break;
    }
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc >= fd) {
    result.x = c;
    result.value = fc;
  } else {
    result.x = d;
    result.value = fd;
  }
  return result;
}

}  // namespace betatail
