#include <algorithm>
#include <chrono>
#include <numeric>

#include "topk/ext.hpp"

namespace topk {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PartialSortOutcome project_partial_sort(const ProjectionInstance& inst, const PartialSortHint& hint,
                                        Method method) {
  PartialSortOutcome out;
  if (auto t = project_trivial(inst)) {
    out.result = std::move(*t);
    return out;
  }
  const Index n = inst.n(), k = inst.k;
  const auto& x0 = inst.x0;
  // Same order as sort_desc: value descending, index ascending among ties.
  auto before = [&](Index a, Index b) { return x0[a] > x0[b] || (x0[a] == x0[b] && a < b); };

  std::vector<Index> idx(x0.size());
  std::vector<double> head;
  Index L = std::clamp(hint.L, k, n);
  for (;;) {
    ++out.attempts;
    auto t0 = std::chrono::steady_clock::now();
    std::iota(idx.begin(), idx.end(), Index{0});
    std::partial_sort(idx.begin(), idx.begin() + L, idx.end(), before);
    // The head plus the largest entry left behind; that entry bounds the whole tail.
    const Index m = L < n ? L + 1 : n;
    if (L < n) {
      auto it = std::min_element(idx.begin() + L, idx.end(), before);
      std::iter_swap(idx.begin() + L, it);
    }
    head.resize(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) head[i] = x0[idx[i]];
    out.sortSeconds += seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    ProjectionResult res = project_sorted(head, k, inst.r, method);
    out.solveSeconds += seconds_since(t0);

    const bool accept = L == n || (res.k1 <= L && res.x[res.k1 - 1] > head[res.k1]);
    if (accept) {
      out.result = std::move(res);
      auto& x = out.result.x;
      std::vector<double> full(x0);
      for (Index i = 0; i < out.result.k1; ++i) full[idx[i]] = x[i];
      x = std::move(full);
      out.usedL = L;
      return out;
    }
    L = std::min(2 * L, n);
  }
}

}  // namespace topk
