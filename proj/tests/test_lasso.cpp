#include "hypercomm/error.hpp"
#include "hypercomm/ingest.hpp"
#include "hypercomm/lasso.hpp"
#include "hypercomm/seed.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hypercomm;

namespace {

struct Instance {
  Vector y;
  Matrix b;
};

// Unit-norm columns and target, as produced by ingest.
Instance random_instance(std::uint64_t seed, Index p, Index n) {
  Rng rng(seed);
  Instance inst;
  inst.b = oracle::unit_columns(oracle::random_normal(p, n, rng));
  inst.y = oracle::random_normal(p, 1, rng).col(0).normalized();
  return inst;
}

}  // namespace

TEST_CASE("zero solution at or above the l-infinity threshold") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto inst = random_instance(100 + s, 20, 6);
    const double threshold = (inst.b.transpose() * inst.y).cwiseAbs().maxCoeff();
    for (double scale : {1.0, 1.5, 10.0}) {
      const auto sol = solve_lasso(inst.y, inst.b, {threshold * scale, 1e-8, 10000});
      CHECK(sol.converged);
      for (Index j = 0; j < sol.coef.size(); ++j) CHECK(sol.coef[j] == 0.0);
    }
  }
}

TEST_CASE("single unit predictor matches closed-form soft thresholding") {
  Rng rng(5);
  const Matrix b = oracle::unit_columns(oracle::random_normal(9, 1, rng));
  for (double c : {2.0, -0.5, 0.3, 0.005, -0.005}) {
    for (double lambda : {0.01, 0.1}) {
      const Vector y = c * b.col(0);
      const auto sol = solve_lasso(y, b, {lambda, 1e-12, 100});
      const double expected = (c > 0 ? 1.0 : -1.0) * std::max(std::abs(c) - lambda, 0.0);
      CHECK(sol.coef[0] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("random 8x5 instance matches the projected-gradient oracle") {
  const auto inst = random_instance(2024, 8, 5);
  const double lambda = 0.1;
  const auto sol = solve_lasso(inst.y, inst.b, {lambda, 1e-10, 10000});
  const Vector ref = oracle::projected_gradient_lasso(inst.y, inst.b, lambda);
  const double obj = oracle::lasso_objective(inst.y, inst.b, sol.coef, lambda);
  const double ref_obj = oracle::lasso_objective(inst.y, inst.b, ref, lambda);
  CHECK(sol.converged);
  CHECK(std::abs(obj - ref_obj) <= 1e-6);
  // frozen from the oracle run
  CHECK(ref_obj == doctest::Approx(0.42636183484743773).epsilon(1e-9));
}

TEST_CASE("regress_all satisfies KKT per row, zero diagonal, deterministic") {
  Rng rng(77);
  const Matrix f = normalize_rows(Matrix(oracle::random_normal(12, 40, rng)));
  const auto w = regress_all(f, {0.01, 1e-8, 10000});
  const auto w2 = regress_all(f, {0.01, 1e-8, 10000}, 4);
  CHECK(w.weights == w2.weights);
  CHECK(w.n_unconverged() == 0);
  const Matrix cov = f * f.transpose();
  for (Index i = 0; i < 12; ++i) {
    CHECK(w.weights(i, i) == 0.0);
    CHECK(w.kkt[static_cast<std::size_t>(i)] <= 1e-8);
    // independent KKT check directly from the data
    const Vector g = cov * w.weights.row(i).transpose() - cov.col(i);
    for (Index j = 0; j < 12; ++j) {
      if (j == i) continue;
      const double wj = w.weights(i, j);
      if (wj > 0)
        CHECK(std::abs(g[j] + 0.01) <= 1e-8);
      else if (wj < 0)
        CHECK(std::abs(g[j] - 0.01) <= 1e-8);
      else
        CHECK(std::abs(g[j]) <= 0.01 + 1e-8);
    }
  }
}

TEST_CASE("near-duplicate rows select each other") {
  Rng rng(8);
  Matrix raw = oracle::random_normal(8, 60, rng);
  raw.row(5) = raw.row(2) + 0.05 * oracle::random_normal(1, 60, rng);
  const auto w = regress_all(normalize_rows(raw), {0.01, 1e-8, 10000});
  Index arg2, arg5;
  w.weights.row(2).maxCoeff(&arg2);
  w.weights.row(5).maxCoeff(&arg5);
  CHECK(arg2 == 5);
  CHECK(arg5 == 2);
}

TEST_CASE("two ROIs: one coefficient per row") {
  Matrix raw(2, 5);
  raw << 1, 2, 3, 4, 6, 2, 1, 4, 3, 5;
  const auto w = regress_all(normalize_rows(raw), {0.01, 1e-8, 10000});
  CHECK(w.weights.rows() == 2);
  CHECK(w.weights(0, 0) == 0.0);
  CHECK(w.weights(1, 1) == 0.0);
  // demeaned dot product 10, norms sqrt(14.8) and sqrt(10): corr = 10 / sqrt(148)
  const double expected = 10.0 / std::sqrt(148.0) - 0.01;
  CHECK(w.weights(0, 1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(w.weights(1, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("support size is non-increasing in lambda") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto inst = random_instance(500 + s, 64, 15);
    Index prev = 1000;
    for (double lambda : {0.001, 0.003, 0.01, 0.03, 0.1, 0.3}) {
      const auto sol = solve_lasso(inst.y, inst.b, {lambda, 1e-10, 20000});
      const Index nnz = (sol.coef.array() != 0.0).count();
      CHECK(nnz <= prev);
      prev = nnz;
    }
  }
}

TEST_CASE("non-convergence is flagged, not thrown") {
  const auto inst = random_instance(31, 6, 12);  // more predictors than samples
  const auto sol = solve_lasso(inst.y, inst.b, {0.001, 1e-14, 1});
  CHECK_FALSE(sol.converged);
  CHECK(sol.sweeps == 1);
  CHECK(sol.coef.size() == 12);
  CHECK(sol.kkt_residual > 1e-14);
}

TEST_CASE("rank-deficient rows converge within the default sweep limit") {
  // 16 ROIs, 15 time points: the demeaned predictors span at most 14 dimensions
  Rng rng(2030);
  const Matrix f = normalize_rows(oracle::random_normal(16, 15, rng));
  const Vector y = f.row(0).transpose();
  const Matrix b = f.bottomRows(15).transpose();
  const double lambda = 0.001;
  const auto sol = solve_lasso(y, b, LassoOptions{lambda, 1e-8, 10000});
  CHECK(sol.converged);
  CHECK(sol.kkt_residual <= 1e-8);
  const Vector ref = oracle::projected_gradient_lasso(y, b, lambda);
  CHECK(std::abs(oracle::lasso_objective(y, b, sol.coef, lambda) - oracle::lasso_objective(y, b, ref, lambda)) <= 1e-6);
}

TEST_CASE("invalid options") {
  const auto inst = random_instance(1, 5, 3);
  CHECK_THROWS_AS(solve_lasso(inst.y, inst.b, {0.0, 1e-8, 10}), Error);
  CHECK_THROWS_AS(solve_lasso(inst.y, inst.b, {-1.0, 1e-8, 10}), Error);
  CHECK_THROWS_AS(solve_lasso(inst.y.head(3), inst.b, {0.1, 1e-8, 10}), Error);
}
