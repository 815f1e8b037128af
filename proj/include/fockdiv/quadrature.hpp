#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace fockdiv::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive 61-point Gauss-Kronrod on [a, b].
template <class F>
Result adaptive(F&& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 15) {
  Result r;
  if (a == b) return r;
  double l1 = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, max_depth, rel_tol, &r.error, &l1);
  return r;
}

// Fixed 20-point Gauss-Legendre on [a, b]; used inside composite panel rules.
template <class F>
double gauss20(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

// Adaptive integral split at the given interior break points (sorted, inside (a, b)).
template <class F, class Breaks>
Result adaptive_split(F&& f, double a, double b, const Breaks& breaks, double rel_tol = 1e-12) {
  Result total;
  double lo = a;
  auto add = [&](double hi) {
    if (hi > lo) {
      Result p = adaptive(f, lo, hi, rel_tol);
      total.value += p.value;
      total.error += p.error;
    }
    lo = hi;
  };
  for (double x : breaks)
    if (x > a && x < b) add(x);
  add(b);
  return total;
}

} // namespace fockdiv::quad
