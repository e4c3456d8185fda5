#include "topk/grid.hpp"

#include "dd.hpp"
#include "topk/esgs.hpp"

namespace topk {

namespace {

using detail::DD;

struct DdCandidate {
  double rho;
  DD numTheta, numLambda, numTpl;
};

DdCandidate evaluate(Index k, Index k0, Index k1, DD sa, DD sb) {
  const double dk = double(k), d0 = double(k0), d1 = double(k1);
  return {d0 * (d1 - d0) + (dk - d0) * (dk - d0), sb * d0 - sa * (dk - d0),
          sb * (dk - d0) + sa * (d1 - d0), sb * dk + sa * (d1 - dk)};
}

// rho * v is exact as a double-double since rho is a small integer.
DD scaled(double rho, double v) {
  const double p = rho * v;
  return {p, std::fma(rho, v, -p)};
}

bool satisfies(std::span<const double> v, Index k0, Index k1, const DdCandidate& c) {
  using detail::sign;
  const auto n = static_cast<Index>(v.size());
  return sign(c.numLambda) > 0 &&
         (k0 == 0 || sign(scaled(c.rho, v[k0 - 1]) - c.numTpl) > 0) &&
         sign(c.numTpl - scaled(c.rho, v[k0])) >= 0 &&
         sign(scaled(c.rho, v[k1 - 1]) - c.numTheta) >= 0 &&
         (k1 == n || sign(c.numTheta - scaled(c.rho, v[k1])) > 0);
}

}  // namespace

void project_sorted_grid(std::span<const double> values, Index k, double r, ProjectionResult& out,
                         const GridOptions& opt) {
  detail::check_sorted_engine_args(values, k, "grid");
  const auto n = static_cast<Index>(values.size());

  double plain = 0.0;
  DD headSum{-r, 0.0};  // values_1..k-1 minus r
  for (Index i = 0; i + 1 < k; ++i) {
    plain += values[i];
    headSum = headSum + values[i];
  }
  if (plain + values[k - 1] <= r) throw ArgumentError("grid: input already feasible");
  DD plateauSum;  // values_k..k1

  Index satisfied = 0, visited = 0, firstVisited = 0, bk0 = -1, bk1 = -1;
  DdCandidate found{};
  for (Index k1 = k; k1 <= n; ++k1) {
    plateauSum = plateauSum + values[k1 - 1];
    DD sa = headSum, sb = plateauSum;
    for (Index k0 = k - 1; k0 >= 0; --k0) {
      ++visited;
      if (opt.deadline && (visited & 0xFFFF) == 0 &&
          std::chrono::steady_clock::now() > *opt.deadline)
        throw DeadlineExceeded("grid: time limit exceeded");
      const DdCandidate c = evaluate(k, k0, k1, sa, sb);
      if (satisfies(values, k0, k1, c)) {
        ++satisfied;
        if (bk0 < 0) {
          found = c;
          bk0 = k0;
          bk1 = k1;
          firstVisited = visited;
        }
        if (!opt.exhaustive) break;
      }
      if (k0 > 0) {
        sa = sa - values[k0 - 1];
        sb = sb + values[k0 - 1];
      }
    }
    if (bk0 >= 0 && !opt.exhaustive) break;
  }
  if (bk0 < 0 && detail::sign(headSum + values[k - 1]) <= 0) {
    // The excess over r was rounding noise in the plain sum; x0 is feasible.
    const auto [k0, k1] = find_index_pair(values, k);
    out.x.assign(values.begin(), values.end());
    out.method = Method::GRID;
    out.theta = values[k - 1];
    out.lambda = 0.0;
    out.k0 = k0;
    out.k1 = k1;
    out.iterations = visited;
    return;
  }
  if (bk0 < 0) throw InvariantError("grid: no index pair satisfies the KKT conditions");
  if (opt.exhaustive && satisfied != 1)
    throw InvariantError("grid: " + std::to_string(satisfied) + " index pairs satisfy the KKT conditions");

  Candidate c;
  c.k0 = bk0;
  c.k1 = bk1;
  c.rho = found.rho;
  c.numTheta = detail::to_double(found.numTheta);
  c.numLambda = detail::to_double(found.numLambda);
  c.numTpl = detail::to_double(found.numTpl);
  c.theta = c.numTheta / c.rho;
  c.lambda = c.numLambda / c.rho;
  c.thetaPlusLambda = c.numTpl / c.rho;

  out.x.resize(values.size());
  fill_candidate_solution(values, c, out.x);
  out.method = Method::GRID;
  out.theta = c.theta;
  out.lambda = c.lambda;
  out.k0 = bk0;
  out.k1 = bk1;
  out.iterations = opt.exhaustive ? firstVisited : visited;
}

ProjectionResult project_sorted_grid(std::span<const double> values, Index k, double r,
                                     const GridOptions& opt) {
  ProjectionResult out;
  project_sorted_grid(values, k, r, out, opt);
  return out;
}

}  // namespace topk
