#include <algorithm>
#include <string>

#include "topk/ext.hpp"

namespace topk {

TranslatedInstance translate_to_zero_budget(const ProjectionInstance& inst) {
  inst.validate();
  TranslatedInstance t;
  t.delta = inst.r / double(inst.k);
  t.inst.k = inst.k;
  t.inst.r = 0.0;
  t.inst.x0.resize(inst.x0.size());
  for (std::size_t i = 0; i < inst.x0.size(); ++i) t.inst.x0[i] = inst.x0[i] - t.delta;
  return t;
}

double k1_upper_bound(std::span<const double> values, Index k, std::optional<Index> p) {
  const auto n = static_cast<Index>(values.size());
  if (k < 1 || k > n) throw ArgumentError("k1_upper_bound: k outside [1, n]");
  const double gap = values[0] - values[k - 1];
  const double last = values[n - 1];
  if (!p) return std::max((1.0 - double(k)) * gap, last);

  if (*p <= k || *p > n)
    throw ArgumentError("k1_upper_bound: p must satisfy k < p <= n (p=" + std::to_string(*p) + ")");
  double s = 0.0;
  for (Index i = 0; i < *p; ++i) s += values[i];
  if (s > 0.0) throw ArgumentError("k1_upper_bound: prefix sum up to p is positive");
  return std::max(-double(k) / double(*p - k) * gap, last);
}

std::optional<Index> find_nonpositive_prefix(std::span<const double> values, Index k) {
  double s = 0.0;
  for (Index i = 0; i < static_cast<Index>(values.size()); ++i) {
    s += values[i];
    if (i + 1 > k && s <= 0.0) return i + 1;
  }
  return std::nullopt;
}

Index count_at_least(std::span<const double> values, double bound, Index k) {
  // values are nonincreasing, so the count is a partition point.
  auto it = std::partition_point(values.begin(), values.end(), [&](double v) { return v >= bound; });
  const auto c = static_cast<Index>(it - values.begin());
  return std::clamp(c, k, static_cast<Index>(values.size()));
}

}  // namespace topk
