#pragma once

// Reference routines shared by the tests. They are written from the raw
// definitions and deliberately avoid the library code paths they check.

#include <cmath>
#include <functional>

namespace oracle {

using LReal = long double;

struct Problem {
  int n;
  LReal q, mu, c_gn, s_sob;
};

inline LReal crit(int n) { return 2.0L * n / (n - 4); }

inline LReal f(const Problem& p, LReal c, LReal rho) {
  const LReal a0 = (p.q - 2) * p.n / 8 - 1;
  const LReal a1 = (2 * p.n - p.q * (p.n - 4)) / 8;
  const LReal pc = crit(p.n);
  return 0.5L - p.mu / p.q * std::pow(p.c_gn, p.q) * std::pow(rho, a0) * std::pow(c, a1) -
         std::pow(p.s_sob, pc) / pc * std::pow(rho, pc / 2 - 1);
}

/// Maximizer of g over [lo, hi] in log coordinates: dense scan, then golden
/// section around the best sample.
inline LReal golden_argmax(const std::function<LReal(LReal)>& g, LReal lo, LReal hi,
                           int scan = 2000) {
  LReal best_x = std::log(lo);
  LReal best = -INFINITY;
  const LReal a = std::log(lo), b = std::log(hi);
  for (int i = 0; i <= scan; ++i) {
    const LReal x = a + (b - a) * i / scan;
    const LReal v = g(std::exp(x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const LReal step = (b - a) / scan;
  LReal l = best_x - step, h = best_x + step;
  const LReal gr = (std::sqrt(5.0L) - 1) / 2;
  LReal x1 = h - gr * (h - l), x2 = l + gr * (h - l);
  LReal f1 = g(std::exp(x1)), f2 = g(std::exp(x2));
  while (h - l > 1e-15L) {
    if (f1 > f2) {
      h = x2; x2 = x1; f2 = f1;
      x1 = h - gr * (h - l);
      f1 = g(std::exp(x1));
    } else {
      l = x1; x1 = x2; f1 = f2;
      x2 = l + gr * (h - l);
      f2 = g(std::exp(x2));
    }
  }
  return std::exp((l + h) / 2);
}

/// Root of g in [lo, hi] by plain bisection; g(lo) and g(hi) differ in sign.
inline LReal bisect(const std::function<LReal(LReal)>& g, LReal lo, LReal hi) {
  const bool lo_neg = g(lo) < 0;
  for (int i = 0; i < 200; ++i) {
    const LReal mid = (lo + hi) / 2;
    ((g(mid) < 0) == lo_neg ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

inline LReal rel(LReal a, LReal b) { return std::abs(a - b) / std::abs(b); }

}  // namespace oracle
