#include <algorithm>
#include <cmath>
#include <numeric>

#include "topk/ext.hpp"
#include "topk/plcp.hpp"

namespace topk {

namespace {

// Pivoting on M = E E^T with E = [D; e_n^T].  M is tridiag(-1, 2, -1) except
// M_nn = 1.  A basis {a..b} with b < n has the usual inverse; once it contains
// n the inverse becomes min(i, j).
struct GroundedInverse {
  Index m;
  bool grounded;
  double operator()(Index i, Index j) const {
    return grounded ? double(std::min(i, j)) : minv(m, i, j);
  }
};

}  // namespace

ProjectionResult project_sorted_vector_k_norm(std::span<const double> values, Index k, double r) {
  const auto n = static_cast<Index>(values.size());
  if (n == 0) throw ArgumentError("empty input vector");
  if (k < 1 || k > n) throw ArgumentError("k outside [1, n]");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ArgumentError("vector-k-norm radius must be >= 0");
#ifndef NDEBUG
  if (!is_nonincreasing(values) || values[n - 1] < 0.0)
    throw ArgumentError("vector-k-norm: expects sorted nonnegative data");
#endif

  ProjectionResult out;
  out.method = Method::PLCP;
  const double s0 = std::accumulate(values.begin(), values.begin() + k, 0.0);
  if (s0 <= r) {
    out.method = Method::TRIVIAL;
    out.x.assign(values.begin(), values.end());
    auto p = find_index_pair(values, k);
    out.k0 = p.k0;
    out.k1 = p.k1;
    return out;
  }
  if (r == 0.0) {
    // The ball is {0}; report the smallest multiplier that certifies it.
    out.method = Method::TRIVIAL;
    out.x.assign(values.size(), 0.0);
    double s = 0.0, lam = 0.0;
    for (Index i = 1; i <= n; ++i) {
      s += values[i - 1];
      lam = std::max(lam, s / double(std::min(i, k)));
    }
    out.lambda = lam;
    out.theta = 0.0;
    out.k0 = 0;
    out.k1 = n;
    return out;
  }

  auto q = [&](Index i) { return i < n ? values[i - 1] - values[i] : values[n - 1]; };
  const double dk = double(k);
  out.x.assign(values.begin(), values.end());

  if (s0 - dk * q(k) <= r) {
    const double lam = (s0 - r) / dk;
    for (Index i = 0; i < k; ++i) out.x[i] -= lam;
    out.lambda = lam;
    out.theta = out.x[k - 1];
    out.k0 = k - 1;
    out.k1 = k;
    return out;
  }

  Index a = k, b = k, t = 1;
  double zA = -q(k) / (k == n ? 1.0 : 2.0);
  double zK = zA, zB = zA;
  double lamBar = 0.0;
  for (;;) {
    const Index m = b - a + 1, posK = k - a + 1;
    const GroundedInverse G{m, b == n};
    const double la = a > 1 ? (q(a - 1) - zA) / G(1, posK) : kInf;
    const double lb = b < n ? (q(b + 1) - zB) / G(m, posK) : kInf;
    const double lnext = std::min(la, lb);
    const double gkk = G(posK, posK);
    // A full basis pins z at 0, which satisfies any r > 0 earlier on the path.
    if (lnext == kInf) throw InvariantError("vector-k-norm: basis exhausted");
    if (s0 - dk * lnext + zK + gkk * lnext <= r) {
      lamBar = (s0 - r + zK) / (dk - gkk);
      break;
    }
    if (la <= lb) {
      const double sigma = 2.0 - G(1, 1);
      const double zNew = (zA - q(a - 1)) / sigma;
      zK += zNew * G(posK, 1);
      zB += zNew * G(m, 1);
      zA = zNew;
      --a;
    } else {
      const double sigma = (b + 1 == n ? 1.0 : 2.0) - G(m, m);
      const double zNew = (zB - q(b + 1)) / sigma;
      zA += zNew * G(1, m);
      zK += zNew * G(posK, m);
      zB = zNew;
      ++b;
    }
    ++t;
  }

  // Every basis row is tight, so positions a..b+1 share one value, which the
  // block sum determines; a basis that reaches n pins that value to 0.
  for (Index i = 0; i < k; ++i) out.x[i] -= lamBar;
  const Index last = std::min(b + 1, n);
  double theta = 0.0;
  if (b < n) {
    double s = 0.0;
    for (Index i = a; i <= last; ++i) s += values[i - 1];
    const Index inHead = std::max<Index>(0, std::min(k, last) - a + 1);
    theta = (s - lamBar * double(inHead)) / double(last - a + 1);
  }
  std::fill(out.x.begin() + (a - 1), out.x.begin() + last, theta);
  out.lambda = lamBar;
  out.theta = theta;
  out.k0 = a - 1;
  out.k1 = last;
  out.iterations = t;
  return out;
}

ProjectionResult project_vector_k_norm(std::span<const double> z0, Index k, double r) {
  const auto n = static_cast<Index>(z0.size());
  if (n == 0) throw ArgumentError("empty input vector");
  for (double v : z0)
    if (!std::isfinite(v)) throw ArgumentError("input contains NaN or infinite entries");
  std::vector<double> mag(z0.size());
  for (Index i = 0; i < n; ++i) mag[i] = std::fabs(z0[i]);
  auto s = sort_desc(mag);
  auto res = project_sorted_vector_k_norm(s.values, k, r);
  std::vector<double> x(z0.size());
  for (Index i = 0; i < n; ++i) {
    const Index j = s.perm[i];
    x[j] = res.method == Method::TRIVIAL && res.lambda == 0.0 ? z0[j]
                                                              : std::copysign(res.x[i], z0[j]);
  }
  res.x = std::move(x);
  return res;
}

}  // namespace topk
