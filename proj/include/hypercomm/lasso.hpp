#pragma once

#include "hypercomm/types.hpp"

#include <cstddef>
#include <vector>

namespace hypercomm {

struct LassoOptions {
  double lambda = 0.01;
  double tol = 1e-8;           // KKT residual
  std::size_t max_iter = 10000;  // full coordinate sweeps
};

struct LassoSolution {
  Vector coef;
  std::size_t sweeps = 0;
  double kkt_residual = 0.0;
  // False when the residual is still above tol after max_iter sweeps; coef is
  // then the last iterate.
  bool converged = false;
};

// min_w 0.5 * ||targets - predictors * w||^2 + lambda * ||w||_1
//
// Cyclic coordinate descent on the covariance form. The sweep order is fixed,
// so identical inputs give bitwise-identical outputs.
LassoSolution solve_lasso(const Vector& targets, const Matrix& predictors, const LassoOptions& opts);

// Same problem given gram = predictors^T predictors and corr = predictors^T targets.
LassoSolution solve_lasso_gram(const Matrix& gram, const Vector& corr, const LassoOptions& opts);

double lasso_objective(const Vector& targets, const Matrix& predictors, const Vector& coef, double lambda);

// Largest violation of the Lasso optimality conditions, with g = gram*coef - corr:
// |g_j + sign(w_j) * lambda| on the support and max(|g_j| - lambda, 0) off it.
double kkt_residual(const Matrix& gram, const Vector& corr, const Vector& coef, double lambda);

// Row i holds the regression of ROI i on every other ROI scattered back into
// N slots, with the diagonal fixed at zero.
struct WeightMatrix {
  Matrix weights;
  double lambda = 0.0;
  std::vector<std::size_t> sweeps;
  std::vector<double> kkt;
  std::vector<bool> converged;

  Index size() const { return weights.rows(); }
  std::size_t n_unconverged() const;
};

// Expects normalized rows. Rows are solved independently; `threads` == 0 uses
// the hardware concurrency. The result does not depend on the thread count.
WeightMatrix regress_all(const Matrix& normalized, const LassoOptions& opts, unsigned threads = 1);

}  // namespace hypercomm
