#pragma once

#include <vector>

#include "topk/core.hpp"

namespace topk {

// Candidate (theta, lambda) for a trial index pair.  Every value is kept as a
// numerator over rho as well, so the KKT tests can compare rho * v against the
// numerators without rounding a division first.
struct Candidate {
  Index k0 = 0, k1 = 0;
  double rho = 1.0;
  double theta = 0.0, lambda = 0.0, thetaPlusLambda = 0.0;
  double numTheta = 0.0, numLambda = 0.0, numTpl = 0.0;
};

struct KktFlags {
  bool kkt1 = false, kkt2 = false, kkt3 = false, kkt4 = false, kkt5 = false;
  bool all() const { return kkt1 && kkt2 && kkt3 && kkt4 && kkt5; }
  bool operator==(const KktFlags&) const = default;
};

// sumAlpha = sum of values_1..k0, sumBeta = sum of values_{k0+1}..k1.
Candidate candidate_solution(std::span<const double> values, Index k, double r, Index k0, Index k1,
                             double sumAlpha, double sumBeta);
// Convenience form that sums the ranges itself.
Candidate candidate_solution(std::span<const double> values, Index k, double r, Index k0,
                             Index k1);

KktFlags kkt_flags(std::span<const double> values, const Candidate& c);

ProjectionResult project_sorted_esgs(std::span<const double> values, Index k, double r);
// Reuses out.x storage.
void project_sorted_esgs(std::span<const double> values, Index k, double r, ProjectionResult& out);

struct EsgsStep {
  Index k0 = 0, k1 = 0;
  KktFlags flags;
};

// Same walk, but evaluates all five indicators at every visited pair, records
// them, and throws InvariantError if kkt1, kkt3 or kkt4 ever fails.
ProjectionResult project_sorted_esgs_checked(std::span<const double> values, Index k, double r,
                                             std::vector<EsgsStep>* steps = nullptr);

// Fills x (sorted order) from a candidate: head shifted by lambda, plateau at theta.
void fill_candidate_solution(std::span<const double> values, const Candidate& c,
                             std::span<double> x);

namespace detail {
// Candidate for a known pair with the range sums carried in double-double, so
// the final budget is met to near working precision even when the sums are
// large next to r.  O(k1).
Candidate refined_candidate(std::span<const double> values, Index k, double r, Index k0, Index k1);
}  // namespace detail

}  // namespace topk
