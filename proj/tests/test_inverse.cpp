#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "sglnufft/experiments.hpp"
#include "sglnufft/inverse.hpp"

using namespace sglnufft;

namespace {

DenseOperator random_dense(std::size_t rows, std::size_t cols, unsigned seed) {
  return DenseOperator(rows, cols, oracle::random_vector(rows * cols, seed));
}

// Conjugate-transpose products through the oracle solver.
CVector least_squares(const DenseOperator& a, std::size_t rows, std::size_t cols, const CVector& b) {
  std::vector<cplx> n(cols * cols), rhs(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < rows; ++k) n[i * cols + j] += std::conj(a(k, i)) * a(k, j);
    for (std::size_t k = 0; k < rows; ++k) rhs[i] += std::conj(a(k, i)) * b[k];
  }
  return oracle::solve(n, rhs);
}

CVector minimum_norm(const DenseOperator& a, std::size_t rows, std::size_t cols, const CVector& b) {
  std::vector<cplx> g(rows * rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k) g[i * rows + j] += a(i, k) * std::conj(a(j, k));
  const auto y = oracle::solve(g, b);
  CVector x(cols);
  for (std::size_t k = 0; k < cols; ++k)
    for (std::size_t i = 0; i < rows; ++i) x[k] += std::conj(a(i, k)) * y[i];
  return x;
}

double diff(const CVector& a, const CVector& b) { return oracle::max_rel_diff(a, b); }

}  // namespace

TEST_CASE("dense operator") {
  const auto a = random_dense(5, 3, 1);
  const auto x = oracle::random_vector(3, 2);
  const auto y = oracle::random_vector(5, 3);
  const auto ax = a.apply(x);
  const auto ay = a.apply_adjoint(y);
  for (std::size_t i = 0; i < 5; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) s += a(i, j) * x[j];
    CHECK(std::abs(s - ax[i]) < 1e-14);
  }
  for (std::size_t j = 0; j < 3; ++j) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) s += std::conj(a(i, j)) * y[i];
    CHECK(std::abs(s - ay[j]) < 1e-14);
  }
  CHECK_THROWS(DenseOperator(2, 2, CVector(3)));
  CHECK_THROWS(a.apply(CVector(4)));
}

TEST_CASE("identity converges in one step") {
  const auto b = oracle::random_vector(6, 4);
  const auto id = DenseOperator::identity(6);
  const auto r = cgnr(id, b, CVector(6));
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(diff(b, r.solution) < 1e-15);
  const auto e = cgne(id, b);
  CHECK(e.iterations == 1);
  CHECK(diff(b, e.solution) < 1e-15);
}

TEST_CASE("cgnr solves least squares") {
  const auto a = random_dense(20, 8, 5);
  SolverOptions o;
  o.max_iter = 100;
  o.tol = 1e-13;
  SUBCASE("consistent") {
    const auto x = oracle::random_vector(8, 6);
    const auto b = a.apply(x);
    const auto r = cgnr(a, b, CVector(8), o);
    CHECK(r.converged);
    CHECK(diff(x, r.solution) < 1e-10);
  }
  SUBCASE("inconsistent") {
    const auto b = oracle::random_vector(20, 7);
    const auto r = cgnr(a, b, CVector(8), o);
    CHECK(diff(least_squares(a, 20, 8, b), r.solution) < 1e-9);
    CHECK(r.residual_history.back() > 0.1);
    for (std::size_t k = 1; k < r.residual_history.size(); ++k)
      CHECK(r.residual_history[k] <= r.residual_history[k - 1] * (1.0 + 1e-12));
  }
  SUBCASE("error tracking and start vector") {
    const auto x = oracle::random_vector(8, 8);
    o.ground_truth = x;
    const auto r = cgnr(a, a.apply(x), x, o);
    CHECK(r.iterations == 0);
    CHECK(r.max_abs_error.size() == 1);
    CHECK(r.max_abs_error[0] == 0.0);
  }
  CHECK_THROWS(cgnr(a, CVector(19), CVector(8), o));
  CHECK_THROWS(cgnr(a, CVector(20), CVector(7), o));
}

TEST_CASE("cgne gives the minimum norm solution") {
  const auto a = random_dense(8, 20, 9);
  const auto b = oracle::random_vector(8, 10);
  SolverOptions o;
  o.max_iter = 100;
  o.tol = 1e-13;
  const auto r = cgne(a, b, o);
  CHECK(r.converged);
  CHECK(diff(minimum_norm(a, 8, 20, b), r.solution) < 1e-9);
  CHECK(diff(b, a.apply(r.solution)) < 1e-10);
}

TEST_CASE("mid-point guess") {
  const int N = 25;
  const double kappa = 5.0;
  const auto grid = gen_grid(N, kappa);
  const cplx c(1.5, -0.5);
  BandlimitedCoefficients one(1, {c});
  const auto vals = ndsglft_naive(one, grid);
  const auto g = midpoint_initial_guess(vals, grid, 1, N, kappa);
  CHECK(std::abs(g.data[0] - c) <= 0.1 * std::abs(c));
  CHECK(midpoint_weight(MidpointWeight::fixed, 25, 5.0) == doctest::Approx(8.0 / 25));
  CHECK(midpoint_weight(MidpointWeight::riemann, 25, 5.0) == doctest::Approx(0.064));
  for (const auto& v : midpoint_initial_guess(CVector(grid.size()), grid, 3, N, kappa).data)
    CHECK(v == cplx(0.0));
  CHECK_THROWS(midpoint_initial_guess(vals, grid, 1, 0, kappa));
  CHECK_THROWS(midpoint_initial_guess(CVector(3), grid, 1, N, kappa));

  // through an operator gives the same guess
  const auto op = sgl_matrix(2, grid);
  const auto two = midpoint_initial_guess(vals, grid, 2, N, kappa);
  CHECK(diff(two.data, midpoint_initial_guess(vals, grid, 2, N, kappa, MidpointWeight::riemann, &op).data) <
        1e-12);

  // a finer grid gives a better guess
  const auto f = BandlimitedCoefficients(4, oracle::random_vector(coefficient_count(4), 11));
  auto guess_err = [&](int n) {
    const auto pts = gen_grid(n, kappa);
    const auto g4 = midpoint_initial_guess(ndsglft_naive(f, pts), pts, 4, n, kappa);
    return diff(f.data, g4.data);
  };
  CHECK(guess_err(50) < guess_err(25));
}

TEST_CASE("infsglft recovers coefficients") {
  const int B = 2;
  const auto pts = gen_points_ball(500, 3.0, 12);
  const BandlimitedCoefficients f(B, oracle::random_vector(coefficient_count(B), 13));
  const auto vals = ndsglft_naive(f, pts);
  InverseOptions o;
  o.bandwidth = B;
  o.op = OperatorKind::fast_exact;
  o.solve.max_iter = 200;
  o.solve.tol = 1e-12;
  o.solve.ground_truth = f.data;
  const auto r = infsglft(pts, vals, o);
  CHECK(r.converged);
  CHECK(r.iterations <= 200);
  CHECK(diff(f.data, r.solution) <= 1e-6);
  CHECK(r.warning.empty());
  CHECK(r.max_rel_error.back() <= 1e-6);
  for (std::size_t k = 1; k < r.residual_history.size(); ++k)
    CHECK(r.residual_history[k] <= r.residual_history[k - 1] * (1.0 + 1e-12));

  o.op = OperatorKind::dense;
  const auto d = infsglft(pts, vals, o);
  CHECK(diff(d.solution, r.solution) <= 1e-8);
  o.op = OperatorKind::naive;
  CHECK(diff(infsglft(pts, vals, o).solution, r.solution) <= 1e-8);

  o.op = OperatorKind::fast_exact;
  o.solver = SolverChoice::cgne;
  o.solve.max_iter = 5;
  CHECK_FALSE(infsglft(pts, vals, o).warning.empty());
  CHECK_THROWS(infsglft(pts, CVector(3), o));
}

TEST_CASE("solver selection") {
  CHECK(select_solver(14, 3) == SolverChoice::cgnr);
  CHECK(select_solver(13, 3) == SolverChoice::cgne);
  const auto pts = gen_points_ball(5, 2.0, 14);
  const BandlimitedCoefficients f(3, oracle::random_vector(14, 15));
  InverseOptions o;
  o.bandwidth = 3;
  o.op = OperatorKind::dense;
  o.solve.max_iter = 50;
  o.solve.tol = 1e-13;
  const auto vals = ndsglft_naive(f, pts);
  const auto r = infsglft(pts, vals, o);
  CHECK(r.warning.empty());
  const auto fit = ndsglft_naive(BandlimitedCoefficients(3, r.solution), pts);
  CHECK(diff(vals, fit) < 1e-9);
  o.solver = SolverChoice::cgnr;
  CHECK(infsglft(pts, vals, o).warning.find("fewer points") != std::string::npos);
}

TEST_CASE("mid-point start helps at bandwidth 4") {
  const int B = 4, N = 12;
  const double kappa = 4.0;
  const auto grid = gen_grid(N, kappa);
  const BandlimitedCoefficients f(B, oracle::random_vector(coefficient_count(B), 16));
  const auto vals = ndsglft_naive(f, grid);
  InverseOptions o;
  o.bandwidth = B;
  o.op = OperatorKind::dense;
  o.grid_n = N;
  o.kappa = kappa;
  o.solve.max_iter = 0;
  o.solve.ground_truth = f.data;
  o.x0 = InitialGuess::midpoint;
  const auto mid = infsglft(grid, vals, o);
  o.x0 = InitialGuess::zero;
  const auto zero = infsglft(grid, vals, o);
  CHECK(mid.max_abs_error[0] < zero.max_abs_error[0]);
  o.x0 = InitialGuess::midpoint;
  o.grid_n = 0;
  CHECK_THROWS(infsglft(grid, vals, o));
}
