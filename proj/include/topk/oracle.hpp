#pragma once

// Slow reference implementations for tests and `topk check`.  Not part of
// the production library; link topk_oracle explicitly.

#include <string>
#include <vector>

#include "topk/core.hpp"

namespace topk {

// Enumerates every (k0, k1), evaluates the five KKT conditions in exact
// rational arithmetic, and requires exactly one pair to pass.  The solution is
// rounded to nearest at the end.  n <= 256.
ProjectionResult oracle_project_exhaustive(std::span<const double> values, Index k, double r);

// Number of (k0, k1) pairs passing all five conditions.
Index oracle_count_satisfying(std::span<const double> values, Index k, double r);

// Checks a sorted-space result against the subgradient form of the KKT
// system: plateau multipliers in [0, 1] summing to k - k0, budget tight when
// lambda > 0, x == values when lambda == 0.  Scaled tolerance
// tol * max(1, |values|_inf, lambda).  why (optional) receives the first failure.
bool oracle_kkt_verify(std::span<const double> values, const ProjectionResult& res, Index k,
                       double r, double tol = 1e-10, std::string* why = nullptr);

// Projection onto the vector-k-norm ball by a dense primal active-set QP on
// the sorted magnitudes.  n <= 16.
std::vector<double> oracle_qp_vecknorm(std::span<const double> z0, Index k, double r);

// ---- dense linear algebra for the pivoting internals ----

// Inverse of tridiag(-1, 2, -1) of size m, row-major.
std::vector<double> dense_tridiag_inverse(Index m);

// z(0) = -M^{-1} q on basis {a..b} (1-based), by dense solve.
std::vector<double> dense_basis_z0(std::span<const double> values, Index a, Index b);

// D^T z(lambda) as a length-n vector, with z = M^{-1}(-q + lambda e_k) on {a..b}.
std::vector<double> dense_dtz(std::span<const double> values, Index a, Index b, Index k,
                              double lambda);

// Recovers z from a sorted-space solution and checks w = Mz + q + lambda d >= 0,
// z >= 0, w^T z = 0 and the budget complementarity.
bool dense_lcp_check(std::span<const double> values, Index k, double r, const ProjectionResult& res,
                     double tol = 1e-9, std::string* why = nullptr);

// ---- support function ----

struct SupportOracle {
  bool finite = false;
  double value = 0.0;           // r * sum(y) when finite
  double residual = 0.0;        // |c - A y|_2 from the NNLS fit
  double certificateDot = 0.0;  // c^T d for the recession direction d = c - A y
  double certificateTopK = 0.0; // top-k-sum(d), <= 0 up to rounding
};

// Solves min |A y - c| over y >= 0 (Lawson-Hanson), A = indicator columns of
// all k-subsets.  Finite iff the residual vanishes.  n <= 10.
SupportOracle oracle_support_function(std::span<const double> c, Index k, double r);

}  // namespace topk
