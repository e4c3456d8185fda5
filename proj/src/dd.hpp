#pragma once

// Double-double accumulators for the exhaustive scan. Sums of the input
// entries and their products with small integers are carried with about
// 106 bits, so the KKT comparisons stay decidable when the budget excess
// T - r sits at the rounding level of T.

#include <cmath>

namespace topk::detail {

struct DD {
  double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }
inline DD operator+(DD a, double b) { return a + DD{b, 0.0}; }
inline DD operator-(DD a, double b) { return a + DD{-b, 0.0}; }

inline DD operator*(DD a, double m) {
  const double p = a.hi * m;
  const double e = std::fma(a.hi, m, -p);
  return quick_two_sum(p, e + a.lo * m);
}

inline DD operator/(DD a, double b) {
  const double q1 = a.hi / b;
  const DD r = a - (DD{q1, 0.0} * b);
  return quick_two_sum(q1, (r.hi + r.lo) / b);
}

inline int sign(DD a) { return a.hi > 0 ? 1 : a.hi < 0 ? -1 : (a.lo > 0) - (a.lo < 0); }
inline double to_double(DD a) { return a.hi + a.lo; }

}  // namespace topk::detail
