#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topk {

using Index = std::ptrdiff_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A theoretical guarantee failed to hold at runtime.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method { ESGS, PLCP, GRID, TRIVIAL };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

struct ProjectionInstance {
  std::vector<double> x0;
  Index k = 1;
  double r = 0.0;

  Index n() const { return static_cast<Index>(x0.size()); }
  // Throws ArgumentError for empty x0, k outside [1, n] or non-finite data.
  void validate() const;
};

// values[i] = x0[perm[i]]; perm is 0-based.  The sentinels values_0 = +inf
// and values_{n+1} = -inf are implied by value_at().
struct SortedView {
  std::vector<double> values;
  std::vector<Index> perm;
};

struct ProjectionResult {
  std::vector<double> x;
  double lambda = 0.0;
  double theta = std::numeric_limits<double>::quiet_NaN();  // NaN when lambda == 0
  Index k0 = 0;  // 1-based boundaries, 0 <= k0 < k <= k1 <= n
  Index k1 = 0;
  Index iterations = 0;
  Method method = Method::TRIVIAL;
};

struct Tolerances {
  double feasTol = 0.0;
  double agreeTol = 1e-10;
};

struct IndexPair {
  Index k0 = 0;
  Index k1 = 0;
  bool operator==(const IndexPair&) const = default;
};

// 1-based access with the +inf / -inf sentinels at 0 and n+1.
inline double value_at(std::span<const double> v, Index i) {
  if (i <= 0) return kInf;
  if (i > static_cast<Index>(v.size())) return -kInf;
  return v[static_cast<std::size_t>(i - 1)];
}

// Sum of the k largest entries, expected O(n) via nth_element on a copy.
double top_k_sum(std::span<const double> x, Index k);
// Same, for data already sorted nonincreasingly (no copy, O(k)).
double top_k_sum_sorted(std::span<const double> values, Index k);

SortedView sort_desc(std::span<const double> x);

IndexPair find_index_pair(std::span<const double> values, Index k);

std::optional<ProjectionResult> project_trivial(const ProjectionInstance& inst,
                                                const Tolerances& tol = {});

// Solves on data already sorted nonincreasingly; result.x is in sorted order.
// Handles the trivial cases before delegating to the chosen engine.
ProjectionResult project_sorted(std::span<const double> values, Index k, double r,
                                Method method = Method::ESGS, const Tolerances& tol = {});

ProjectionResult project(const ProjectionInstance& inst, Method method = Method::ESGS,
                         const Tolerances& tol = {});

bool is_nonincreasing(std::span<const double> values);

namespace detail {
void check_sorted_engine_args(std::span<const double> values, Index k, const char* who);
}

}  // namespace topk
