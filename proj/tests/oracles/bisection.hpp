#pragma once

// Independent real-root oracle: exact rational bisection on a bracket.

#include <gmpxx.h>

#include <vector>

namespace rdc::oracle {

inline mpq_class eval_int_poly(const std::vector<long>& coeffs, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Midpoint of a bracket of width <= 2^-bits around the root in [lo, hi].
inline mpq_class bisect_root(const std::vector<long>& coeffs, mpq_class lo, mpq_class hi, unsigned bits) {
  const int s_lo = sgn(eval_int_poly(coeffs, lo));
  mpq_class width = 1;
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), bits);
  while (hi - lo > width) {
    const mpq_class mid = (lo + hi) / 2;
    const int s = sgn(eval_int_poly(coeffs, mid));
    if (s == 0) return mid;
    if (s == s_lo) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace rdc::oracle
