#include "topk/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dd.hpp"
#include "topk/esgs.hpp"
#include "topk/grid.hpp"
#include "topk/plcp.hpp"

namespace topk {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::ESGS: return "esgs";
    case Method::PLCP: return "plcp";
    case Method::GRID: return "grid";
    case Method::TRIVIAL: return "trivial";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "esgs") return Method::ESGS;
  if (name == "plcp") return Method::PLCP;
  if (name == "grid") return Method::GRID;
  if (name == "trivial") return Method::TRIVIAL;
  throw ArgumentError("unknown method '" + std::string(name) + "'");
}

void ProjectionInstance::validate() const {
  if (x0.empty()) throw ArgumentError("empty input vector");
  if (k < 1 || k > n())
    throw ArgumentError("k=" + std::to_string(k) + " outside [1, " + std::to_string(n()) + "]");
  if (!std::isfinite(r)) throw ArgumentError("budget r must be finite");
  for (double v : x0)
    if (!std::isfinite(v)) throw ArgumentError("input contains NaN or infinite entries");
}

bool is_nonincreasing(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(),
                            [](double a, double b) { return !(a >= b); }) == values.end();
}

namespace detail {

void check_sorted_engine_args(std::span<const double> values, Index k, const char* who) {
  const auto n = static_cast<Index>(values.size());
  if (k <= 1 || k >= n)
    throw ArgumentError(std::string(who) + ": requires 1 < k < n (k=" + std::to_string(k) +
                        ", n=" + std::to_string(n) + ")");
#ifndef NDEBUG
  if (!is_nonincreasing(values)) throw ArgumentError(std::string(who) + ": input is not sorted");
#endif
}

}  // namespace detail

double top_k_sum(std::span<const double> x, Index k) {
  const auto n = static_cast<Index>(x.size());
  if (k < 1 || k > n) throw ArgumentError("top_k_sum: k outside [1, n]");
  std::vector<double> w(x.begin(), x.end());
  if (k < n) std::nth_element(w.begin(), w.begin() + (k - 1), w.end(), std::greater<>());
  // Sum in nonincreasing order so the result matches the sorted evaluation.
  std::sort(w.begin(), w.begin() + k, std::greater<>());
  return std::accumulate(w.begin(), w.begin() + k, 0.0);
}

double top_k_sum_sorted(std::span<const double> values, Index k) {
  if (k < 1 || k > static_cast<Index>(values.size()))
    throw ArgumentError("top_k_sum: k outside [1, n]");
  return std::accumulate(values.begin(), values.begin() + k, 0.0);
}

SortedView sort_desc(std::span<const double> x) {
  if (x.empty()) throw ArgumentError("sort_desc: empty input");
  SortedView s;
  s.perm.resize(x.size());
  std::iota(s.perm.begin(), s.perm.end(), Index{0});
  std::stable_sort(s.perm.begin(), s.perm.end(),
                   [&](Index a, Index b) { return x[a] > x[b]; });
  s.values.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s.values[i] = x[s.perm[i]];
  return s;
}

IndexPair find_index_pair(std::span<const double> values, Index k) {
  const auto n = static_cast<Index>(values.size());
  if (k < 1 || k > n) throw ArgumentError("find_index_pair: k outside [1, n]");
  const double vk = values[k - 1];
  Index k0 = k - 1;
  while (k0 > 0 && values[k0 - 1] == vk) --k0;
  Index k1 = k;
  while (k1 < n && values[k1] == vk) ++k1;
  return {k0, k1};
}

namespace {

std::optional<ProjectionResult> trivial_sorted(std::span<const double> values, Index k, double r,
                                               const Tolerances& tol) {
  const auto n = static_cast<Index>(values.size());
  ProjectionResult res;
  res.method = Method::TRIVIAL;
  if (top_k_sum_sorted(values, k) <= r + tol.feasTol) {
    res.x.assign(values.begin(), values.end());
    auto p = find_index_pair(values, k);
    res.k0 = p.k0;
    res.k1 = p.k1;
    return res;
  }
  if (k == 1) {
    res.x.resize(values.size());
    double lam = 0.0;
    Index k1 = 0;
    for (Index i = 0; i < n; ++i) {
      res.x[i] = std::min(r, values[i]);
      if (values[i] > r) lam += values[i] - r;
      if (values[i] >= r) ++k1;
    }
    res.lambda = lam;
    res.theta = r;
    res.k0 = 0;
    res.k1 = k1;
    return res;
  }
  if (k == n) {
    detail::DD excess{-r, 0.0};
    for (double v : values) excess = excess + v;
    const double lam = detail::to_double(excess) / double(n);
    res.x.resize(values.size());
    for (Index i = 0; i < n; ++i) res.x[i] = values[i] - lam;
    res.lambda = lam;
    res.theta = res.x[n - 1];
    res.k0 = find_index_pair(values, n).k0;
    res.k1 = n;
    return res;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ProjectionResult> project_trivial(const ProjectionInstance& inst,
                                                const Tolerances& tol) {
  inst.validate();
  const Index n = inst.n(), k = inst.k;
  const double r = inst.r;
  const auto& x0 = inst.x0;

  if (k == 1 || k == n) {
    // Both closed forms are order-free, so work on the unsorted data directly.
    auto s = sort_desc(x0);
    auto res = trivial_sorted(s.values, k, r, tol);
    std::vector<double> x(x0.size());
    for (Index i = 0; i < n; ++i) x[s.perm[i]] = res->x[i];
    res->x = std::move(x);
    return res;
  }

  // k-th largest by selection; then the index pair is two counts.
  std::vector<double> w(x0);
  std::nth_element(w.begin(), w.begin() + (k - 1), w.end(), std::greater<>());
  std::sort(w.begin(), w.begin() + k, std::greater<>());
  const double sum = std::accumulate(w.begin(), w.begin() + k, 0.0);
  if (sum > r + tol.feasTol) return std::nullopt;

  const double vk = w[k - 1];
  ProjectionResult res;
  res.method = Method::TRIVIAL;
  res.x = x0;
  for (double v : x0) {
    if (v > vk) ++res.k0;
    if (v >= vk) ++res.k1;
  }
  return res;
}

ProjectionResult project_sorted(std::span<const double> values, Index k, double r, Method method,
                                const Tolerances& tol) {
  const auto n = static_cast<Index>(values.size());
  if (n == 0) throw ArgumentError("empty input vector");
  if (k < 1 || k > n) throw ArgumentError("k outside [1, n]");
  if (auto t = trivial_sorted(values, k, r, tol)) return std::move(*t);
  switch (method) {
    case Method::ESGS: return project_sorted_esgs(values, k, r);
    case Method::PLCP: return project_sorted_plcp(values, k, r);
    case Method::GRID: return project_sorted_grid(values, k, r);
    case Method::TRIVIAL: break;
  }
  throw ArgumentError("instance is not trivial; choose esgs, plcp or grid");
}

ProjectionResult project(const ProjectionInstance& inst, Method method, const Tolerances& tol) {
  inst.validate();
  if (auto t = project_trivial(inst, tol)) return std::move(*t);
  auto s = sort_desc(inst.x0);
  auto res = project_sorted(s.values, inst.k, inst.r, method, tol);
  std::vector<double> x(inst.x0.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[s.perm[i]] = res.x[i];
  res.x = std::move(x);
  return res;
}

}  // namespace topk
