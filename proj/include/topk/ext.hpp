#pragma once

#include <optional>

#include "topk/core.hpp"

namespace topk {

// ---- partial sorting -------------------------------------------------------

struct PartialSortHint {
  Index L = 0;       // first guess for an upper bound on k1 (clamped to [k, n])
  Index buffer = 0;  // slack added by next_hint()
};

struct PartialSortOutcome {
  ProjectionResult result;  // x in input order
  Index usedL = 0;          // L of the accepted attempt (0 for trivial instances)
  Index attempts = 0;
  double sortSeconds = 0.0;
  double solveSeconds = 0.0;
};

// Sorts only the L largest entries and solves on them plus the largest
// remaining entry.  The answer is accepted when k1 <= L and the plateau value
// strictly exceeds everything after position k1; otherwise L doubles.  The
// engines never read past position k1 + 1 on an accepted run, so the answer is
// bitwise identical to the full-sort pipeline.
PartialSortOutcome project_partial_sort(const ProjectionInstance& inst, const PartialSortHint& hint,
                                        Method method = Method::ESGS);

// L for the next solve in a sequence of related projections: previous k1 + c.
inline PartialSortHint next_hint(const ProjectionResult& prev, Index buffer) {
  return {prev.k1 + buffer, buffer};
}

// ---- translation -----------------------------------------------------------

struct TranslatedInstance {
  ProjectionInstance inst;  // r == 0
  double delta = 0.0;       // add back to the solution
};

TranslatedInstance translate_to_zero_budget(const ProjectionInstance& inst);

// ---- k1 upper bound --------------------------------------------------------

// For sorted data translated to r = 0, a value B with x_{k1} >= B at the
// solution, so every index up to k1 holds an entry >= B:
//   B = max{(1-k)(v_1 - v_k), v_n}.
// With p > k and v_1 + ... + v_p <= 0 the tighter heuristic
//   max{-k/(p-k) (v_1 - v_k), v_n}
// is returned instead.  That form is not a guaranteed bound and should only
// seed the partial-sort safeguard.
double k1_upper_bound(std::span<const double> values, Index k, std::optional<Index> p = {});

// Smallest p > k with a nonpositive prefix sum, if any.  O(n).
std::optional<Index> find_nonpositive_prefix(std::span<const double> values, Index k);

// Number of entries >= bound in sorted data, clamped to [k, n].
Index count_at_least(std::span<const double> values, double bound, Index k);

// ---- support function ------------------------------------------------------

// sup { c^T x : top-k-sum(x) <= r }: (r/k) 1^T c when c >= 0 and no entry of c
// exceeds its mean over k slots, +inf otherwise.  One pass.
double support_function(std::span<const double> c, Index k, double r);

// ---- vector-k-norm ball ----------------------------------------------------

// Projection onto { z : sum of the k largest |z_i| <= r }.  Works on sorted
// magnitudes with the extra constraint z_n >= 0 and restores signs afterwards.
ProjectionResult project_vector_k_norm(std::span<const double> z0, Index k, double r);

// Sorted nonnegative form; values must be nonincreasing and >= 0.
ProjectionResult project_sorted_vector_k_norm(std::span<const double> values, Index k, double r);

}  // namespace topk
