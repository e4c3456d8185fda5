#pragma once

#include <vector>

#include "topk/core.hpp"

namespace topk {

// Entry (i, j) of the inverse of the m x m tridiagonal matrix tridiag(-1, 2, -1).
inline double minv(Index m, Index i, Index j) {
  const Index lo = i < j ? i : j;
  const Index hi = i < j ? j : i;
  return double(m + 1 - hi) * double(lo) / double(m + 1);
}

// Basis window {a..b} (1-based, contiguous, contains k) and the entries of
// z(0) = -M^{-1} q at its first, k-th and last positions.
struct PivotState {
  Index a = 0, b = 0, posK = 0;
  double zA0 = 0.0, zK0 = 0.0, zB0 = 0.0;
  double sigma = 0.0;
  double s0 = 0.0;
  Index t = 0;
};

struct PlcpTrace {
  std::vector<double> breakpoints;  // lambda at which each basis element entered
  std::vector<PivotState> states;   // state after each pivot
  bool solvedAtInit = false;
};

// Adds D^T z(lambda) to y, where z solves the basis system on {a..b}.  y and
// values are indexed like the sorted vector (y[i-1] holds y_i).  O(b - a + 1).
void apply_dtz(std::span<double> y, std::span<const double> values, Index a, Index b, Index posK,
               double lambda);

IndexPair recover_index_pair(Index a, Index b, bool solvedAtInit, Index k, Index n);

ProjectionResult project_sorted_plcp(std::span<const double> values, Index k, double r,
                                     PlcpTrace* trace = nullptr);
void project_sorted_plcp(std::span<const double> values, Index k, double r, ProjectionResult& out,
                         PlcpTrace* trace = nullptr);

}  // namespace topk
