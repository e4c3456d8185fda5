#include "topk/esgs.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dd.hpp"

namespace topk {

Candidate candidate_solution(std::span<const double> values, Index k, double r, Index k0, Index k1,
                             double sumAlpha, double sumBeta) {
  (void)values;
  Candidate c;
  c.k0 = k0;
  c.k1 = k1;
  const double dk = double(k), d0 = double(k0), d1 = double(k1);
  const double sa = sumAlpha - r;
  c.rho = d0 * (d1 - d0) + (dk - d0) * (dk - d0);
  c.numTheta = d0 * sumBeta - (dk - d0) * sa;
  c.numLambda = (dk - d0) * sumBeta + (d1 - d0) * sa;
  c.numTpl = dk * sumBeta + (d1 - dk) * sa;
  c.theta = c.numTheta / c.rho;
  c.lambda = c.numLambda / c.rho;
  c.thetaPlusLambda = c.numTpl / c.rho;
  return c;
}

Candidate candidate_solution(std::span<const double> values, Index k, double r, Index k0,
                             Index k1) {
  const auto n = static_cast<Index>(values.size());
  if (k < 1 || k > n || k0 < 0 || k0 > k - 1 || k1 < k || k1 > n)
    throw ArgumentError("candidate_solution: index pair out of range");
  const double sa = std::accumulate(values.begin(), values.begin() + k0, 0.0);
  const double sb = std::accumulate(values.begin() + k0, values.begin() + k1, 0.0);
  return candidate_solution(values, k, r, k0, k1, sa, sb);
}

KktFlags kkt_flags(std::span<const double> values, const Candidate& c) {
  const auto n = static_cast<Index>(values.size());
  KktFlags f;
  f.kkt1 = c.numLambda > 0.0;
  f.kkt2 = c.k0 == 0 || c.rho * value_at(values, c.k0) > c.numTpl;
  f.kkt3 = c.numTpl >= c.rho * value_at(values, c.k0 + 1);
  f.kkt4 = c.rho * value_at(values, c.k1) >= c.numTheta;
  f.kkt5 = c.k1 == n || c.numTheta > c.rho * value_at(values, c.k1 + 1);
  return f;
}

void fill_candidate_solution(std::span<const double> values, const Candidate& c,
                             std::span<double> x) {
  const double lam = c.lambda;
  const auto n = static_cast<Index>(values.size());
  for (Index i = 0; i < c.k0; ++i) x[i] = values[i] - lam;
  std::fill(x.begin() + c.k0, x.begin() + c.k1, c.theta);
  std::copy(values.begin() + c.k1, values.begin() + n, x.begin() + c.k1);
}

namespace detail {

Candidate refined_candidate(std::span<const double> values, Index k, double r, Index k0, Index k1) {
  DD sa{-r, 0.0}, sb;
  for (Index i = 0; i < k0; ++i) sa = sa + values[i];
  for (Index i = k0; i < k1; ++i) sb = sb + values[i];
  const double dk = double(k), d0 = double(k0), d1 = double(k1);
  Candidate c;
  c.k0 = k0;
  c.k1 = k1;
  c.rho = d0 * (d1 - d0) + (dk - d0) * (dk - d0);
  c.numTheta = to_double(sb * d0 - sa * (dk - d0));
  c.numLambda = to_double(sb * (dk - d0) + sa * (d1 - d0));
  c.numTpl = to_double(sb * dk + sa * (d1 - dk));
  c.theta = c.numTheta / c.rho;
  c.lambda = c.numLambda / c.rho;
  c.thetaPlusLambda = c.numTpl / c.rho;
  return c;
}

}  // namespace detail

namespace {

#ifdef NDEBUG
constexpr bool kCheckTrajectory = false;
#else
constexpr bool kCheckTrajectory = true;
#endif

template <bool Checked>
void esgs_impl(std::span<const double> values, Index k, double r, ProjectionResult& out,
               std::vector<EsgsStep>* steps) {
  detail::check_sorted_engine_args(values, k, "esgs");
  const auto n = static_cast<Index>(values.size());
  const double dk = double(k);

  Index k0 = k - 1, k1 = k;
  double sumAlpha = std::accumulate(values.begin(), values.begin() + (k - 1), 0.0);
  double sumBeta = values[k - 1];
  if (sumAlpha + sumBeta <= r) throw ArgumentError("esgs: input already feasible");

  Index evals = 0;
  double rho = 0.0, numTheta = 0.0, numTpl = 0.0;
  for (;;) {
    ++evals;
    const double d0 = double(k0), d1 = double(k1);
    const double sa = sumAlpha - r;
    rho = d0 * (d1 - d0) + (dk - d0) * (dk - d0);
    numTheta = d0 * sumBeta - (dk - d0) * sa;
    numTpl = dk * sumBeta + (d1 - dk) * sa;
    const bool kkt2 = k0 == 0 || rho * values[k0 - 1] > numTpl;
    const bool kkt5 = k1 == n || numTheta > rho * values[k1];

    if constexpr (Checked) {
      Candidate c = candidate_solution(values, k, r, k0, k1, sumAlpha, sumBeta);
      KktFlags f = kkt_flags(values, c);
      if (steps) steps->push_back({k0, k1, f});
      if (!(f.kkt1 && f.kkt3 && f.kkt4))
        throw InvariantError("esgs: kkt1/3/4 violated at (" + std::to_string(k0) + "," +
                             std::to_string(k1) + ")");
    }

    if (kkt2 && kkt5) break;
    if (evals > n) throw InvariantError("esgs: exceeded n candidate evaluations");
    if (kkt2) {
      sumBeta += values[k1];
      ++k1;
    } else {
      sumAlpha -= values[k0 - 1];
      sumBeta += values[k0 - 1];
      --k0;
    }
  }

  const Candidate c = detail::refined_candidate(values, k, r, k0, k1);
  out.x.resize(values.size());
  out.method = Method::ESGS;
  out.theta = c.theta;
  out.lambda = c.lambda;
  out.k0 = k0;
  out.k1 = k1;
  out.iterations = evals;
  fill_candidate_solution(values, c, out.x);
}

}  // namespace

void project_sorted_esgs(std::span<const double> values, Index k, double r, ProjectionResult& out) {
  esgs_impl<kCheckTrajectory>(values, k, r, out, nullptr);
}

ProjectionResult project_sorted_esgs(std::span<const double> values, Index k, double r) {
  ProjectionResult out;
  esgs_impl<kCheckTrajectory>(values, k, r, out, nullptr);
  return out;
}

ProjectionResult project_sorted_esgs_checked(std::span<const double> values, Index k, double r,
                                             std::vector<EsgsStep>* steps) {
  ProjectionResult out;
  esgs_impl<true>(values, k, r, out, steps);
  return out;
}

}  // namespace topk
