#pragma once

#include <chrono>
#include <optional>

#include "topk/core.hpp"

namespace topk {

struct DeadlineExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridOptions {
  // Keep scanning after the first hit and throw InvariantError unless exactly
  // one pair satisfies all five conditions.
  bool exhaustive = false;
  // Checked every 65536 pairs; DeadlineExceeded is thrown once passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Scans k1 = k..n (outer) and k0 = k-1..0 (inner).  iterations = pairs visited.
ProjectionResult project_sorted_grid(std::span<const double> values, Index k, double r,
                                     const GridOptions& opt = {});
void project_sorted_grid(std::span<const double> values, Index k, double r, ProjectionResult& out,
                         const GridOptions& opt = {});

}  // namespace topk
