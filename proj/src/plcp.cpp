#include "topk/plcp.hpp"

#include <algorithm>
#include <numeric>

#include "dd.hpp"

namespace topk {

using detail::DD;

namespace {

// q_i = values_i - values_{i+1}, 1 <= i <= n-1
inline double qv(std::span<const double> v, Index i) { return v[i - 1] - v[i]; }

}  // namespace

namespace {

// The two cumulative passes behind D^T z on basis {a..b}: emits (i, value)
// for the 0-based positions a-1..b, in double-double.
template <class Sink>
void dtz_pass(std::span<const double> values, Index a, Index b, Index posK, double lambda,
              Sink&& sink) {
  const Index m = b - a + 1;
  auto rhs = [&](Index i) {
    DD q = detail::two_sum(values[a + i - 2], -values[a + i - 1]);  // q_{a+i-1}
    return i == posK ? DD{lambda, 0.0} - q : -q;
  };
  // z_1 = sum_i minv(m, 1, i) rhs_i
  DD c;
  for (Index i = 1; i <= m; ++i) c = c + rhs(i) * double(m + 1 - i);
  c = c / double(m + 1);
  sink(a - 1, c);
  // (D^T z)_{a+i} = z_{i+1} - z_i, and those differences drop by rhs_i each step.
  for (Index i = 1; i <= m; ++i) {
    c = c - rhs(i);
    sink(a + i - 1, c);
  }
}

}  // namespace

void apply_dtz(std::span<double> y, std::span<const double> values, Index a, Index b, Index posK,
               double lambda) {
  dtz_pass(values, a, b, posK, lambda,
           [&](Index i, DD c) { y[i] = detail::to_double(c + y[i]); });
}

IndexPair recover_index_pair(Index a, Index b, bool solvedAtInit, Index k, Index n) {
  if (solvedAtInit) return {k - 1, k};
  return {std::max<Index>(a - 1, 0), std::min(b + 1, n)};
}

void project_sorted_plcp(std::span<const double> values, Index k, double r, ProjectionResult& out,
                         PlcpTrace* trace) {
  detail::check_sorted_engine_args(values, k, "plcp");
  const auto n = static_cast<Index>(values.size());
  const double dk = double(k);
  const double s0 = std::accumulate(values.begin(), values.begin() + k, 0.0);
  if (s0 <= r) throw ArgumentError("plcp: input already feasible");

  out.method = Method::PLCP;
  out.x.assign(values.begin(), values.end());

  const double qk = qv(values, k);
  if (s0 - dk * qk <= r) {
    const double lam = (s0 - r) / dk;
    for (Index i = 0; i < k; ++i) out.x[i] -= lam;
    out.lambda = lam;
    out.theta = out.x[k - 1];
    out.k0 = k - 1;
    out.k1 = k;
    out.iterations = 0;
    if (trace) {
      trace->solvedAtInit = true;
      trace->breakpoints.clear();
      trace->states.clear();
    }
    return;
  }

  PivotState st;
  st.a = st.b = k;
  st.posK = 1;
  st.zA0 = st.zK0 = st.zB0 = -qk / 2.0;
  st.sigma = 1.5;
  st.s0 = s0;
  st.t = 1;
  if (trace) {
    trace->solvedAtInit = false;
    trace->breakpoints.assign(1, qk);
    trace->states.assign(1, st);
  }

  double lamBar = 0.0;
  for (;;) {
    const Index m = st.b - st.a + 1;
    const Index posK = k - st.a + 1;
    const double la =
        st.a > 1 ? (qv(values, st.a - 1) - st.zA0) / minv(m, posK, 1) : kInf;
    const double lb =
        st.b < n - 1 ? (qv(values, st.b + 1) - st.zB0) / minv(m, posK, m) : kInf;
    const double lnext = std::min(la, lb);
    const double mkk = minv(m, posK, posK);

    if (lnext == kInf || s0 - dk * lnext + st.zK0 + mkk * lnext <= r) {
      lamBar = (s0 - r + st.zK0) / (dk - mkk);
      st.posK = posK;
      break;
    }
    if (st.t >= n - 1) throw InvariantError("plcp: all pivots used without meeting the budget");

    if (la <= lb) {
      const double zNew = (st.zA0 - qv(values, st.a - 1)) / st.sigma;
      st.zK0 += zNew * minv(m, posK, 1);
      st.zB0 += zNew * minv(m, m, 1);
      st.zA0 = zNew;
      --st.a;
    } else {
      const double zNew = (st.zB0 - qv(values, st.b + 1)) / st.sigma;
      st.zA0 += zNew * minv(m, 1, m);
      st.zK0 += zNew * minv(m, posK, m);
      st.zB0 = zNew;
      ++st.b;
    }
    const Index m2 = m + 1;
    st.sigma = double(m2 + 2) / double(m2 + 1);
    st.posK = k - st.a + 1;
    ++st.t;
    if (trace) {
      trace->breakpoints.push_back(lnext);
      trace->states.push_back(st);
    }
  }

  // Termination: recompute z_k(0) for the final basis from the closed-form
  // inverse instead of trusting the Schur-tracked value, and solve the budget
  // equation with the integer denominator (m+1)(k - minv(posK,posK)).
  {
    const Index m = st.b - st.a + 1, pk = st.posK;
    DD zk;  // (m+1) z_k(0)
    for (Index j = 1; j <= m; ++j) {
      const DD q = detail::two_sum(values[st.a + j - 2], -values[st.a + j - 1]);
      const Index lo = std::min(pk, j), hi = std::max(pk, j);
      zk = zk - q * double((m + 1 - hi) * lo);
    }
    DD num = zk;
    for (Index i = 0; i < k; ++i) num = num + DD{values[i], 0.0} * double(m + 1);
    num = num - DD{r, 0.0} * double(m + 1);
    lamBar = detail::to_double(num / double((m + 1) * k - (m + 1 - pk) * pk));
  }
  for (Index i = 0; i < k; ++i) out.x[i] -= lamBar;
  dtz_pass(values, st.a, st.b, st.posK, lamBar, [&](Index i, DD c) {
    DD x{values[i], 0.0};
    if (i < k) x = x - lamBar;
    out.x[i] = detail::to_double(x + c);
  });
  const auto p = recover_index_pair(st.a, st.b, false, k, n);
  out.lambda = lamBar;
  out.theta = out.x[k - 1];
  out.k0 = p.k0;
  out.k1 = p.k1;
  out.iterations = st.t;
}

ProjectionResult project_sorted_plcp(std::span<const double> values, Index k, double r,
                                     PlcpTrace* trace) {
  ProjectionResult out;
  project_sorted_plcp(values, k, r, out, trace);
  return out;
}

}  // namespace topk
