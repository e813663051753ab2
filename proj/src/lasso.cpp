#include "hypercomm/lasso.hpp"

#include "hypercomm/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include <Eigen/Cholesky>

namespace hypercomm {
namespace {

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

// Sweeps with an unchanged sign pattern between attempts to solve the support system directly.
constexpr std::size_t kPolishEvery = 10;

std::vector<signed char> sign_pattern(const Vector& w) {
  std::vector<signed char> s(static_cast<std::size_t>(w.size()));
  for (Index j = 0; j < w.size(); ++j) s[static_cast<std::size_t>(j)] = static_cast<signed char>((w[j] > 0) - (w[j] < 0));
  return s;
}

// Minimizer of the objective restricted to the current sign pattern:
// gram_SS w_S = corr_S - lambda * sign_S. False when gram_SS is singular.
bool face_minimizer(const Matrix& gram, const Vector& corr, double lambda, const std::vector<signed char>& signs,
                    Vector& out) {
  std::vector<Index> support;
  for (std::size_t j = 0; j < signs.size(); ++j)
    if (signs[j] != 0) support.push_back(static_cast<Index>(j));
  if (support.empty()) return false;
  const Index m = static_cast<Index>(support.size());
  Vector rhs(m);
  for (Index k = 0; k < m; ++k) {
    const auto j = static_cast<std::size_t>(support[static_cast<std::size_t>(k)]);
    rhs[k] = corr[static_cast<Index>(j)] - lambda * signs[j];
  }
  const Eigen::LDLT<Matrix> ldlt(gram(support, support));
  if (ldlt.info() != Eigen::Success) return false;
  const Vector d = ldlt.vectorD().cwiseAbs();
  if (!(d.minCoeff() > 1e-12 * d.maxCoeff())) return false;
  const Vector ws = ldlt.solve(rhs);
  if (!ws.allFinite()) return false;
  out = Vector::Zero(corr.size());
  for (Index k = 0; k < m; ++k) out[support[static_cast<std::size_t>(k)]] = ws[k];
  return true;
}

// Moves w towards the face minimizer, stopping where the first coefficient
// would change sign; the objective decreases along the whole segment.
// Returns true when the minimizer itself was reached.
bool face_step(Vector& w, const Vector& target, const std::vector<signed char>& signs) {
  double t = 1.0;
  Index hit = -1;
  for (Index j = 0; j < w.size(); ++j) {
    if (signs[static_cast<std::size_t>(j)] == 0) continue;
    if (target[j] * signs[static_cast<std::size_t>(j)] <= 0.0) {
      const double tj = w[j] / (w[j] - target[j]);
      if (tj < t) {
        t = tj;
        hit = j;
      }
    }
  }
  if (hit < 0) {
    w = target;
    return true;
  }
  w += t * (target - w);
  w[hit] = 0.0;
  return false;
}

void check_options(const LassoOptions& opts) {
  if (!(opts.lambda > 0.0) || !std::isfinite(opts.lambda))
    fail(ErrorCode::InvalidArgument, "lambda must be a positive finite number");
  if (!(opts.tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  if (opts.max_iter == 0) fail(ErrorCode::InvalidArgument, "max_iter must be at least 1");
}

}  // namespace

double kkt_residual(const Matrix& gram, const Vector& corr, const Vector& coef, double lambda) {
  const Vector g = gram * coef - corr;
  double worst = 0.0;
  for (Index j = 0; j < coef.size(); ++j) {
    double v;
    if (coef[j] > 0.0)
      v = std::abs(g[j] + lambda);
    else if (coef[j] < 0.0)
      v = std::abs(g[j] - lambda);
    else
      v = std::max(std::abs(g[j]) - lambda, 0.0);
    worst = std::max(worst, v);
  }
  return worst;
}

double lasso_objective(const Vector& targets, const Matrix& predictors, const Vector& coef, double lambda) {
  return 0.5 * (targets - predictors * coef).squaredNorm() + lambda * coef.lpNorm<1>();
}

LassoSolution solve_lasso_gram(const Matrix& gram, const Vector& corr, const LassoOptions& opts) {
  check_options(opts);
  const Index n = corr.size();
  if (gram.rows() != n || gram.cols() != n)
    fail(ErrorCode::DimensionMismatch, "gram must be square and match corr");

  LassoSolution sol;
  sol.coef = Vector::Zero(n);
  if (n == 0) {
    sol.converged = true;
    return sol;
  }
  // residual correlation r = corr - gram * w
  Vector r = corr;
  std::vector<signed char> pattern = sign_pattern(sol.coef);
  std::size_t stable = 0;
  Vector target;
  for (std::size_t sweep = 1; sweep <= opts.max_iter; ++sweep) {
    for (Index j = 0; j < n; ++j) {
      const double diag = gram(j, j);
      if (!(diag > 0.0)) continue;
      const double old = sol.coef[j];
      const double updated = soft_threshold(r[j] + diag * old, opts.lambda) / diag;
      if (updated != old) {
        r.noalias() -= (updated - old) * gram.col(j);
        sol.coef[j] = updated;
      }
    }
    sol.sweeps = sweep;
    r = corr - gram * sol.coef;
    sol.kkt_residual = kkt_residual(gram, corr, sol.coef, opts.lambda);
    if (sol.kkt_residual <= opts.tol) {
      sol.converged = true;
      break;
    }
    auto current = sign_pattern(sol.coef);
    stable = current == pattern ? stable + 1 : 0;
    pattern = std::move(current);
    if (stable > 0 && stable % kPolishEvery == 0 && face_minimizer(gram, corr, opts.lambda, pattern, target)) {
      face_step(sol.coef, target, pattern);
      r = corr - gram * sol.coef;
      sol.kkt_residual = kkt_residual(gram, corr, sol.coef, opts.lambda);
      if (sol.kkt_residual <= opts.tol) {
        sol.converged = true;
        break;
      }
    }
  }
  return sol;
}

LassoSolution solve_lasso(const Vector& targets, const Matrix& predictors, const LassoOptions& opts) {
  if (predictors.rows() != targets.size())
    fail(ErrorCode::DimensionMismatch, "predictors must have one row per target sample");
  const Matrix gram = predictors.transpose() * predictors;
  const Vector corr = predictors.transpose() * targets;
  return solve_lasso_gram(gram, corr, opts);
}

std::size_t WeightMatrix::n_unconverged() const {
  return static_cast<std::size_t>(std::count(converged.begin(), converged.end(), false));
}

WeightMatrix regress_all(const Matrix& normalized, const LassoOptions& opts, unsigned threads) {
  check_options(opts);
  const Index n = normalized.rows();
  if (n < 2) fail(ErrorCode::InvalidArgument, "need at least two ROIs");

  const Matrix cov = normalized * normalized.transpose();
  WeightMatrix out;
  out.weights = Matrix::Zero(n, n);
  out.lambda = opts.lambda;
  out.sweeps.assign(static_cast<std::size_t>(n), 0);
  out.kkt.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<char> converged(static_cast<std::size_t>(n), 0);

  auto solve_row = [&](Index i) {
    std::vector<Index> others;
    others.reserve(static_cast<std::size_t>(n - 1));
    for (Index j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    const Matrix gram = cov(others, others);
    const Vector corr = cov(others, i);
    const auto sol = solve_lasso_gram(gram, corr, opts);
    for (std::size_t k = 0; k < others.size(); ++k) out.weights(i, others[k]) = sol.coef[static_cast<Index>(k)];
    out.sweeps[static_cast<std::size_t>(i)] = sol.sweeps;
    out.kkt[static_cast<std::size_t>(i)] = sol.kkt_residual;
    converged[static_cast<std::size_t>(i)] = sol.converged ? 1 : 0;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<Index>(threads, n));
  if (threads <= 1) {
    for (Index i = 0; i < n; ++i) solve_row(i);
  } else {
    std::atomic<Index> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (Index i = next++; i < n; i = next++) solve_row(i);
      });
  }
  out.converged.assign(converged.begin(), converged.end());
  return out;
}

}  // namespace hypercomm
