#include "topk/oracle.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace topk {

namespace {

// mpq_get_d truncates; round to nearest instead.
double nearest(const mpq_class& q) {
  const double d = q.get_d();
  const double up = std::nextafter(d, INFINITY), down = std::nextafter(d, -INFINITY);
  double best = d;
  mpq_class err = abs(q - mpq_class(d));
  for (double c : {up, down}) {
    if (!std::isfinite(c)) continue;
    mpq_class e2 = abs(q - mpq_class(c));
    if (e2 < err) {
      err = e2;
      best = c;
    }
  }
  return best;
}

// Everything below is exact: doubles are rationals, and the candidate values
// are built from prefix sums with integer coefficients.
struct Exact {
  std::vector<mpq_class> prefix;  // prefix[i] = v_1 + ... + v_i
  mpq_class r;
  std::span<const double> v;
  Index k;

  Exact(std::span<const double> values, Index k_, double r_) : r(r_), v(values), k(k_) {
    prefix.resize(values.size() + 1);
    prefix[0] = 0;
    for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = prefix[i] + mpq_class(values[i]);
  }
};

struct OracleCandidate {
  mpq_class rho, nTheta, nLambda, nTpl;
};

OracleCandidate evaluate(const Exact& e, Index k0, Index k1) {
  const mpq_class sa = e.prefix[k0] - e.r;
  const mpq_class sb = e.prefix[k1] - e.prefix[k0];
  const long k = long(e.k), d0 = long(k0), d1 = long(k1);
  OracleCandidate c;
  c.rho = d0 * (d1 - d0) + (k - d0) * (k - d0);
  c.nTheta = d0 * sb - (k - d0) * sa;
  c.nLambda = (k - d0) * sb + (d1 - d0) * sa;
  c.nTpl = k * sb + (d1 - k) * sa;
  return c;
}

bool satisfies(const Exact& e, Index k0, Index k1, const OracleCandidate& c) {
  const auto n = static_cast<Index>(e.v.size());
  auto rv = [&](Index i) { return mpq_class(c.rho * mpq_class(e.v[i - 1])); };
  const bool c1 = sgn(c.nLambda) > 0;
  const bool c2 = k0 == 0 || rv(k0) > c.nTpl;
  const bool c3 = c.nTpl >= rv(k0 + 1);
  const bool c4 = rv(k1) >= c.nTheta;
  const bool c5 = k1 == n || c.nTheta > rv(k1 + 1);
  return c1 && c2 && c3 && c4 && c5;
}

void check_oracle_args(std::span<const double> values, Index k) {
  const auto n = static_cast<Index>(values.size());
  if (n == 0 || n > 256) throw ArgumentError("oracle: n must be in [1, 256]");
  if (k < 1 || k > n) throw ArgumentError("oracle: k outside [1, n]");
  if (!is_nonincreasing(values)) throw ArgumentError("oracle: values not sorted");
}

template <class Fn>
bool fail(std::string* why, Fn&& describe) {
  if (why) {
    std::ostringstream os;
    os.precision(17);
    describe(os);
    *why = os.str();
  }
  return false;
}

}  // namespace

Index oracle_count_satisfying(std::span<const double> values, Index k, double r) {
  check_oracle_args(values, k);
  const Exact e(values, k, r);
  if (e.prefix[k] <= e.r) throw ArgumentError("oracle: instance is feasible");
  const auto n = static_cast<Index>(values.size());
  Index count = 0;
  for (Index k0 = 0; k0 < k; ++k0)
    for (Index k1 = k; k1 <= n; ++k1)
      if (satisfies(e, k0, k1, evaluate(e, k0, k1))) ++count;
  return count;
}

ProjectionResult oracle_project_exhaustive(std::span<const double> values, Index k, double r) {
  check_oracle_args(values, k);
  const Exact e(values, k, r);
  if (e.prefix[k] <= e.r) throw ArgumentError("oracle: instance is feasible");
  const auto n = static_cast<Index>(values.size());
  Index count = 0, bk0 = -1, bk1 = -1;
  OracleCandidate best;
  for (Index k0 = 0; k0 < k; ++k0)
    for (Index k1 = k; k1 <= n; ++k1) {
      auto c = evaluate(e, k0, k1);
      if (satisfies(e, k0, k1, c)) {
        ++count;
        best = c;
        bk0 = k0;
        bk1 = k1;
      }
    }
  if (count != 1)
    throw InvariantError("oracle: " + std::to_string(count) + " index pairs satisfy the KKT system");

  const mpq_class theta = best.nTheta / best.rho;
  const mpq_class lambda = best.nLambda / best.rho;
  ProjectionResult res;
  res.k0 = bk0;
  res.k1 = bk1;
  res.theta = nearest(theta);
  res.lambda = nearest(lambda);
  res.iterations = k * (n - k + 1);
  res.x.assign(values.begin(), values.end());
  for (Index i = 0; i < bk0; ++i) res.x[i] = nearest(mpq_class(values[i]) - lambda);
  for (Index i = bk0; i < bk1; ++i) res.x[i] = res.theta;
  return res;
}

bool oracle_kkt_verify(std::span<const double> values, const ProjectionResult& res, Index k,
                       double r, double tol, std::string* why) {
  const auto n = static_cast<Index>(values.size());
  const auto& x = res.x;
  if (static_cast<Index>(x.size()) != n) return fail(why, [](auto& os) { os << "size mismatch"; });
  if (k < 1 || k > n) return fail(why, [](auto& os) { os << "k out of range"; });

  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::fabs(v));
  const double lam = res.lambda;
  const double eps = tol * std::max({1.0, vmax, std::fabs(lam)});

  std::vector<double> xs(x);
  std::sort(xs.begin(), xs.end(), std::greater<>());
  const double T = std::accumulate(xs.begin(), xs.begin() + k, 0.0);

  if (lam == 0.0) {
    if (!std::equal(x.begin(), x.end(), values.begin()))
      return fail(why, [](auto& os) { os << "lambda = 0 but x != x0"; });
    if (T > r) return fail(why, [&](auto& os) { os << "lambda = 0 but infeasible, T=" << T; });
    return true;
  }
  if (!(lam > 0.0)) return fail(why, [&](auto& os) { os << "negative multiplier " << lam; });
  if (std::fabs(T - r) > eps)
    return fail(why, [&](auto& os) { os << "budget not tight: T=" << T << " r=" << r; });

  for (Index i = 1; i < n; ++i)
    if (x[i - 1] < x[i] - eps)
      return fail(why, [&](auto& os) { os << "order broken at " << i; });

  const double theta = x[k - 1];
  Index nAlpha = 0, lastAlpha = 0;
  double betaSum = 0.0;
  for (Index i = 1; i <= n; ++i) {
    const double d = values[i - 1] - x[i - 1];
    if (x[i - 1] > theta + eps) {
      ++nAlpha;
      lastAlpha = i;
      if (std::fabs(d - lam) > eps)
        return fail(why, [&](auto& os) { os << "head entry " << i << " not shifted by lambda"; });
    } else if (x[i - 1] < theta - eps) {
      if (std::fabs(d) > eps)
        return fail(why, [&](auto& os) { os << "tail entry " << i << " moved by " << d; });
    } else {
      if (d < -eps || d > lam + eps)
        return fail(why, [&](auto& os) { os << "plateau multiplier outside [0,1] at " << i; });
      betaSum += d;
    }
  }
  if (nAlpha != lastAlpha || nAlpha >= k)
    return fail(why, [&](auto& os) { os << "head set malformed, |alpha|=" << nAlpha; });
  if (std::fabs(betaSum - lam * double(k - nAlpha)) > eps * double(n))
    return fail(why, [&](auto& os) {
      os << "plateau multipliers sum to " << betaSum / lam << ", expected " << k - nAlpha;
    });
  return true;
}

// ---------------------------------------------------------------------------

std::vector<double> dense_tridiag_inverse(Index m) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    M(i, i) = 2.0;
    if (i + 1 < m) M(i, i + 1) = M(i + 1, i) = -1.0;
  }
  Eigen::MatrixXd inv = M.inverse();
  std::vector<double> out(static_cast<std::size_t>(m * m));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) out[i * m + j] = inv(i, j);
  return out;
}

namespace {

Eigen::VectorXd basis_solve(std::span<const double> v, Index a, Index b, Index k, double lambda) {
  const Index m = b - a + 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs(m);
  for (Index i = 0; i < m; ++i) {
    M(i, i) = 2.0;
    if (i + 1 < m) M(i, i + 1) = M(i + 1, i) = -1.0;
    const Index row = a + i;
    rhs(i) = -(v[row - 1] - v[row]) + (row == k ? lambda : 0.0);
  }
  return M.ldlt().solve(rhs);
}

}  // namespace

std::vector<double> dense_basis_z0(std::span<const double> values, Index a, Index b) {
  Eigen::VectorXd z = basis_solve(values, a, b, -1, 0.0);
  return {z.data(), z.data() + z.size()};
}

std::vector<double> dense_dtz(std::span<const double> values, Index a, Index b, Index k,
                              double lambda) {
  const auto n = static_cast<Index>(values.size());
  Eigen::VectorXd zb = basis_solve(values, a, b, k, lambda);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n - 1);
  z.segment(a - 1, b - a + 1) = zb;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n - 1, n);
  for (Index i = 0; i < n - 1; ++i) {
    D(i, i) = 1.0;
    D(i, i + 1) = -1.0;
  }
  Eigen::VectorXd y = D.transpose() * z;
  return {y.data(), y.data() + y.size()};
}

bool dense_lcp_check(std::span<const double> values, Index k, double r, const ProjectionResult& res,
                     double tol, std::string* why) {
  const auto n = static_cast<Index>(values.size());
  const auto& x = res.x;
  const double lam = res.lambda;
  double vmax = 1.0;
  for (double v : values) vmax = std::max(vmax, std::fabs(v));
  const double eps = tol * std::max(vmax, std::fabs(lam)) * double(n);

  // x = v - lam 1_k + D^T z  =>  z_i = sum_{j <= i} (x_j - v_j + lam [j <= k]).
  Eigen::VectorXd z(n), w(n - 1);
  double acc = 0.0;
  for (Index j = 1; j <= n; ++j) {
    acc += x[j - 1] - values[j - 1] + (j <= k ? lam : 0.0);
    z(j - 1) = acc;
  }
  if (std::fabs(z(n - 1)) > eps)
    return fail(why, [&](auto& os) { os << "x - v + lam 1_k not in range of D^T: " << z(n - 1); });
  Eigen::VectorXd zz = z.head(n - 1);

  // w = M z + q + lam d, built from the matrices.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n - 1, n - 1);
  Eigen::VectorXd q(n - 1), d = Eigen::VectorXd::Zero(n - 1);
  for (Index i = 0; i < n - 1; ++i) {
    M(i, i) = 2.0;
    if (i + 1 < n - 1) M(i, i + 1) = M(i + 1, i) = -1.0;
    q(i) = values[i] - values[i + 1];
  }
  if (k <= n - 1) d(k - 1) = -1.0;
  w = M * zz + q + lam * d;
  for (Index i = 0; i < n - 1; ++i) {
    if (zz(i) < -eps) return fail(why, [&](auto& os) { os << "z_" << i + 1 << " = " << zz(i); });
    if (w(i) < -eps) return fail(why, [&](auto& os) { os << "w_" << i + 1 << " = " << w(i); });
    if (std::fabs(zz(i) * w(i)) > eps * std::max(1.0, vmax))
      return fail(why, [&](auto& os) { os << "w^T z nonzero at " << i + 1; });
  }
  std::vector<double> xs(x);
  std::sort(xs.begin(), xs.end(), std::greater<>());
  const double slack = r - std::accumulate(xs.begin(), xs.begin() + k, 0.0);
  if (slack < -eps || lam < 0.0 || std::fabs(lam * slack) > eps * std::max(1.0, lam))
    return fail(why, [&](auto& os) { os << "budget complementarity: slack=" << slack; });
  return true;
}

// ---------------------------------------------------------------------------

std::vector<double> oracle_qp_vecknorm(std::span<const double> z0, Index k, double r) {
  const auto n = static_cast<Index>(z0.size());
  if (n == 0 || n > 16) throw ArgumentError("oracle_qp_vecknorm: n must be in [1, 16]");
  if (k < 1 || k > n) throw ArgumentError("oracle_qp_vecknorm: k outside [1, n]");
  if (r < 0.0) throw ArgumentError("oracle_qp_vecknorm: r < 0");

  std::vector<double> mag(z0.size());
  for (Index i = 0; i < n; ++i) mag[i] = std::fabs(z0[i]);
  const SortedView s = sort_desc(mag);
  Eigen::Map<const Eigen::VectorXd> target(s.values.data(), n);

  // Rows: -(z_i - z_{i+1}) <= 0, -z_n <= 0, 1_k^T z <= r.
  const Index nc = n + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nc, n);
  Eigen::VectorXd bvec = Eigen::VectorXd::Zero(nc);
  for (Index i = 0; i + 1 < n; ++i) {
    A(i, i) = -1.0;
    A(i, i + 1) = 1.0;
  }
  A(n - 1, n - 1) = -1.0;
  for (Index i = 0; i < k; ++i) A(n, i) = 1.0;
  bvec(n) = r;

  const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);  // feasible vertex
  std::vector<Index> W(static_cast<std::size_t>(n));
  std::iota(W.begin(), W.end(), Index{0});

  for (int iter = 0; iter < 10000; ++iter) {
    const auto nw = static_cast<Index>(W.size());
    Eigen::VectorXd zstar = target, mu;
    if (nw > 0) {
      Eigen::MatrixXd Aw(nw, n);
      Eigen::VectorXd bw(nw);
      for (Index i = 0; i < nw; ++i) {
        Aw.row(i) = A.row(W[i]);
        bw(i) = bvec(W[i]);
      }
      mu = (Aw * Aw.transpose()).ldlt().solve(Aw * target - bw);
      zstar = target - Aw.transpose() * mu;
    }
    Eigen::VectorXd p = zstar - z;
    if (p.cwiseAbs().maxCoeff() <= 1e-13 * scale) {
      z = zstar;
      Index worst = -1;
      double most = -1e-12 * scale;
      for (Index i = 0; i < nw; ++i)
        if (mu(i) < most) {
          most = mu(i);
          worst = i;
        }
      if (worst < 0) {
        std::vector<double> out(z0.size());
        for (Index i = 0; i < n; ++i) {
          const Index j = s.perm[i];
          out[j] = std::copysign(std::max(z(i), 0.0), z0[j]);
        }
        return out;
      }
      W.erase(W.begin() + worst);
      continue;
    }
    double alpha = 1.0;
    Index block = -1;
    for (Index c = 0; c < nc; ++c) {
      if (std::find(W.begin(), W.end(), c) != W.end()) continue;
      const double ap = A.row(c).dot(p);
      if (ap > 1e-15 * scale) {
        const double step = (bvec(c) - A.row(c).dot(z)) / ap;
        if (step < alpha) {
          alpha = std::max(step, 0.0);
          block = c;
        }
      }
    }
    z += alpha * p;
    if (block >= 0) W.push_back(block);
  }
  throw InvariantError("oracle_qp_vecknorm: active-set iteration limit reached");
}

// ---------------------------------------------------------------------------

SupportOracle oracle_support_function(std::span<const double> c, Index k, double r) {
  const auto n = static_cast<Index>(c.size());
  if (n == 0 || n > 10) throw ArgumentError("oracle_support_function: n must be in [1, 10]");
  if (k < 1 || k > n) throw ArgumentError("oracle_support_function: k outside [1, n]");

  std::vector<std::vector<Index>> subsets;
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    std::vector<Index> sset;
    for (Index i = 0; i < n; ++i)
      if (mask[i]) sset.push_back(i);
    subsets.push_back(std::move(sset));
  } while (std::prev_permutation(mask.begin(), mask.end()));

  const auto p = static_cast<Index>(subsets.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, p);
  for (Index j = 0; j < p; ++j)
    for (Index i : subsets[j]) A(i, j) = 1.0;
  Eigen::Map<const Eigen::VectorXd> cv(c.data(), n);

  // Lawson-Hanson active-set NNLS.
  const double tol = 1e-12 * std::max(1.0, cv.cwiseAbs().maxCoeff()) * double(p);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(p);
  std::vector<bool> passive(static_cast<std::size_t>(p), false);
  auto lstsq = [&](Eigen::VectorXd& out) {
    std::vector<Index> P;
    for (Index j = 0; j < p; ++j)
      if (passive[j]) P.push_back(j);
    out = Eigen::VectorXd::Zero(p);
    if (P.empty()) return;
    Eigen::MatrixXd Ap(n, static_cast<Index>(P.size()));
    for (std::size_t j = 0; j < P.size(); ++j) Ap.col(static_cast<Index>(j)) = A.col(P[j]);
    Eigen::VectorXd sp = Ap.completeOrthogonalDecomposition().solve(cv);
    for (std::size_t j = 0; j < P.size(); ++j) out(P[j]) = sp(static_cast<Index>(j));
  };
  for (int outer = 0; outer < 10 * p; ++outer) {
    Eigen::VectorXd w = A.transpose() * (cv - A * y);
    Index jmax = -1;
    double wmax = tol;
    for (Index j = 0; j < p; ++j)
      if (!passive[j] && w(j) > wmax) {
        wmax = w(j);
        jmax = j;
      }
    if (jmax < 0) break;
    passive[jmax] = true;
    Eigen::VectorXd sv;
    for (int inner = 0; inner < 10 * p; ++inner) {
      lstsq(sv);
      double minP = kInf;
      for (Index j = 0; j < p; ++j)
        if (passive[j]) minP = std::min(minP, sv(j));
      if (minP > 0.0) break;
      double alpha = kInf;
      for (Index j = 0; j < p; ++j)
        if (passive[j] && sv(j) <= 0.0) alpha = std::min(alpha, y(j) / (y(j) - sv(j)));
      y += alpha * (sv - y);
      for (Index j = 0; j < p; ++j)
        if (passive[j] && y(j) <= tol) {
          passive[j] = false;
          y(j) = 0.0;
        }
    }
    y = sv;
  }

  SupportOracle out;
  Eigen::VectorXd d = cv - A * y;
  out.residual = d.norm();
  out.finite = out.residual <= 1e-9 * std::max(1.0, cv.norm());
  out.value = r * y.sum();
  out.certificateDot = cv.dot(d);
  std::vector<double> ds(d.data(), d.data() + n);
  std::sort(ds.begin(), ds.end(), std::greater<>());
  out.certificateTopK = std::accumulate(ds.begin(), ds.begin() + k, 0.0);
  return out;
}

}  // namespace topk
