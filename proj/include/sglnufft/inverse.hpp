#pragma once

// Conjugate-gradient inversion on the normal equations.
//
//   cgnr: A^H A x = A^H b, for overdetermined systems (least squares);
//   cgne: A A^H y = b, x = A^H y, for underdetermined ones (minimum norm).
//
// Both only need apply / apply_adjoint of the operator.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sglnufft/common.hpp"
#include "sglnufft/sgl_transform.hpp"

namespace sglnufft {

class LinearOperatorPair {
 public:
  virtual ~LinearOperatorPair() = default;
  virtual std::size_t domain_dim() const = 0;
  virtual std::size_t codomain_dim() const = 0;
  virtual CVector apply(std::span<const cplx> x) const = 0;
  virtual CVector apply_adjoint(std::span<const cplx> y) const = 0;
};

/// Row-major dense matrix.
class DenseOperator final : public LinearOperatorPair {
 public:
  DenseOperator(std::size_t rows, std::size_t cols, CVector entries, Exec exec = Exec::parallel);
  static DenseOperator identity(std::size_t n);

  std::size_t domain_dim() const override { return cols_; }
  std::size_t codomain_dim() const override { return rows_; }
  CVector apply(std::span<const cplx> x) const override;
  CVector apply_adjoint(std::span<const cplx> y) const override;
  cplx operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  CVector a_;
  Exec exec_;
};

/// The matrix Lambda with entries H_mu(x_i), built once.
DenseOperator sgl_matrix(int bandwidth, const SphericalPointSet& points,
                         Exec exec = Exec::parallel);

/// Lambda applied through an SglPlan (NFFT or NDFT last stage).
class SglOperator final : public LinearOperatorPair {
 public:
  SglOperator(int bandwidth, SphericalPointSet points, const SglOptions& options);
  std::size_t domain_dim() const override { return plan_.coefficient_count(); }
  std::size_t codomain_dim() const override { return plan_.point_count(); }
  CVector apply(std::span<const cplx> x) const override;
  CVector apply_adjoint(std::span<const cplx> y) const override;

 private:
  SglPlan plan_;
};

/// Lambda by direct per-basis summation, nothing precomputed.
class NaiveSglOperator final : public LinearOperatorPair {
 public:
  NaiveSglOperator(int bandwidth, SphericalPointSet points, Exec exec = Exec::parallel);
  std::size_t domain_dim() const override;
  std::size_t codomain_dim() const override { return points_.size(); }
  CVector apply(std::span<const cplx> x) const override;
  CVector apply_adjoint(std::span<const cplx> y) const override;

 private:
  int bandwidth_;
  SphericalPointSet points_;
  Exec exec_;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  CVector solution;
  /// ||b - A x||_2 after each iteration, index 0 being the start.
  std::vector<double> residual_history;
  /// ||A^H (b - A x)||_2 for cgnr; equal to residual_history for cgne.
  std::vector<double> normal_residual_history;
  /// Filled only when a reference solution is supplied.
  std::vector<double> max_abs_error;
  std::vector<double> max_rel_error;
  std::string warning;
};

struct SolverOptions {
  int max_iter = 100;
  double tol = 1e-10;
  Precision precision = Precision::standard;
  /// Optional reference for per-iteration error tracking.
  std::optional<CVector> ground_truth;
};

SolveReport cgnr(const LinearOperatorPair& op, std::span<const cplx> rhs,
                 std::span<const cplx> x0, const SolverOptions& options = {});
SolveReport cgne(const LinearOperatorPair& op, std::span<const cplx> rhs,
                 const SolverOptions& options = {});

/// Weight of the mid-point rule on G_N: the fixed factor 8/N,
/// or the cell volume (2 kappa / N)^3 of the Riemann sum.
enum class MidpointWeight { fixed, riemann };

double midpoint_weight(MidpointWeight mode, int grid_n, double kappa);

/// fhat_nlm ~ w sum_i f(x_i) conj(H_nlm(x_i)) e^{-|x_i|^2} over the grid G_N.
BandlimitedCoefficients midpoint_initial_guess(std::span<const cplx> grid_values,
                                               const SphericalPointSet& grid_points,
                                               int bandwidth, int grid_n, double kappa,
                                               MidpointWeight mode = MidpointWeight::riemann,
                                               const LinearOperatorPair* op = nullptr);

enum class SolverChoice { cgnr, cgne, automatic };
enum class OperatorKind { fast, fast_exact, naive, dense };
enum class InitialGuess { zero, midpoint };

struct InverseOptions {
  int bandwidth = 4;
  OperatorKind op = OperatorKind::fast;
  SglOptions sgl;
  SolverChoice solver = SolverChoice::automatic;
  InitialGuess x0 = InitialGuess::zero;
  MidpointWeight midpoint = MidpointWeight::riemann;
  int grid_n = 0;       // G_N parameters, needed for the mid-point guess
  double kappa = 0.0;
  SolverOptions solve;
};

/// Operator selected by `kind` for the given points.
std::unique_ptr<LinearOperatorPair> make_sgl_operator(OperatorKind kind, int bandwidth,
                                                      const SphericalPointSet& points,
                                                      const SglOptions& sgl);

/// cgnr when M >= number of coefficients, cgne otherwise.
SolverChoice select_solver(std::size_t points, int bandwidth);

SolveReport infsglft(const SphericalPointSet& points, std::span<const cplx> values,
                     const InverseOptions& options);

}  // namespace sglnufft
