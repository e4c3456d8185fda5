#include <cmath>

#include "topk/ext.hpp"

namespace topk {

double support_function(std::span<const double> c, Index k, double r) {
  const auto n = static_cast<Index>(c.size());
  if (k < 1 || k > n) throw ArgumentError("support_function: k outside [1, n]");
  double sum = 0.0, cmax = -kInf;
  bool nonneg = true;
  for (double v : c) {
    if (!std::isfinite(v)) throw ArgumentError("support_function: c must be finite");
    nonneg = nonneg && v >= 0.0;
    sum += v;
    cmax = v > cmax ? v : cmax;
  }
  if (!nonneg) return kInf;
  // Checking the largest entry covers every index among the k largest.
  if (sum / double(k) - cmax < 0.0) return kInf;
  return r / double(k) * sum;
}

}  // namespace topk
