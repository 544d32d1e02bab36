#include "sglnufft/inverse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sglnufft {

namespace {

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

double sq(double v) { return v * v; }

void track_error(const SolverOptions& options, const CVector& x, SolveReport& report) {
  if (!options.ground_truth) return;
  const CVector& truth = *options.ground_truth;
  double abs_err = 0.0;
  double rel_err = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = std::abs(x[i] - truth[i]);
    abs_err = std::max(abs_err, e);
    if (truth[i] != cplx{}) rel_err = std::max(rel_err, e / std::abs(truth[i]));
  }
  report.max_abs_error.push_back(abs_err);
  report.max_rel_error.push_back(rel_err);
}

void check_truth(const SolverOptions& options, std::size_t n) {
  if (options.ground_truth && options.ground_truth->size() != n) {
    throw std::invalid_argument("ground truth length does not match the operator domain");
  }
}

}  // namespace

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols, CVector entries, Exec exec)
    : rows_(rows), cols_(cols), a_(std::move(entries)), exec_(exec) {
  if (a_.size() != rows * cols) throw std::invalid_argument("DenseOperator: entry count");
}

DenseOperator DenseOperator::identity(std::size_t n) {
  CVector a(n * n, cplx{});
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
  return DenseOperator(n, n, std::move(a));
}

CVector DenseOperator::apply(std::span<const cplx> x) const {
  if (x.size() != cols_) throw std::invalid_argument("DenseOperator::apply: dimension mismatch");
  CVector y(rows_);
  const long long rows = static_cast<long long>(rows_);
#pragma omp parallel for schedule(static) if (exec_ == Exec::parallel) num_threads(worker_count())
  for (long long i = 0; i < rows; ++i) {
    const cplx* row = &a_[static_cast<std::size_t>(i) * cols_];
    cplx s{};
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

CVector DenseOperator::apply_adjoint(std::span<const cplx> y) const {
  if (y.size() != rows_) {
    throw std::invalid_argument("DenseOperator::apply_adjoint: dimension mismatch");
  }
  CVector x(cols_, cplx{});
  const long long cols = static_cast<long long>(cols_);
  // Column blocks per thread keep the row-major sweep and avoid reductions.
#pragma omp parallel if (exec_ == Exec::parallel) num_threads(worker_count())
  {
#pragma omp for schedule(static)
    for (long long blk = 0; blk < (cols + 31) / 32; ++blk) {
      const std::size_t j0 = static_cast<std::size_t>(blk) * 32;
      const std::size_t j1 = std::min(cols_, j0 + 32);
      for (std::size_t i = 0; i < rows_; ++i) {
        const cplx* row = &a_[i * cols_];
        const cplx yi = y[i];
        for (std::size_t j = j0; j < j1; ++j) x[j] += std::conj(row[j]) * yi;
      }
    }
  }
  return x;
}

DenseOperator sgl_matrix(int bandwidth, const SphericalPointSet& points, Exec exec) {
  validate(points);
  const std::size_t cols = coefficient_count(bandwidth);
  const std::size_t rows = points.size();
  CVector a(rows * cols);
  const long long m = static_cast<long long>(rows);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel) num_threads(worker_count())
  for (long long i = 0; i < m; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    std::size_t mu = 0;
    for (int n = 1; n <= bandwidth; ++n) {
      for (int l = 0; l < n; ++l) {
        for (int mm = -l; mm <= l; ++mm, ++mu) {
          a[static_cast<std::size_t>(i) * cols + mu] = sgl_basis_eval({n, l, mm}, p);
        }
      }
    }
  }
  return DenseOperator(rows, cols, std::move(a), exec);
}

SglOperator::SglOperator(int bandwidth, SphericalPointSet points, const SglOptions& options)
    : plan_(bandwidth, std::move(points), options) {}

CVector SglOperator::apply(std::span<const cplx> x) const {
  return plan_.forward(BandlimitedCoefficients(plan_.bandwidth(), CVector(x.begin(), x.end())));
}

CVector SglOperator::apply_adjoint(std::span<const cplx> y) const {
  return plan_.adjoint(y).data;
}

NaiveSglOperator::NaiveSglOperator(int bandwidth, SphericalPointSet points, Exec exec)
    : bandwidth_(bandwidth), points_(std::move(points)), exec_(exec) {
  validate(points_);
}

std::size_t NaiveSglOperator::domain_dim() const { return coefficient_count(bandwidth_); }

CVector NaiveSglOperator::apply(std::span<const cplx> x) const {
  return ndsglft_naive(BandlimitedCoefficients(bandwidth_, CVector(x.begin(), x.end())),
                       points_, exec_);
}

CVector NaiveSglOperator::apply_adjoint(std::span<const cplx> y) const {
  return ndsglft_naive_adjoint(y, points_, bandwidth_, exec_).data;
}

SolveReport cgnr(const LinearOperatorPair& op, std::span<const cplx> rhs,
                 std::span<const cplx> x0, const SolverOptions& options) {
  const std::size_t n = op.domain_dim();
  if (rhs.size() != op.codomain_dim()) throw std::invalid_argument("cgnr: rhs dimension");
  if (x0.size() != n) throw std::invalid_argument("cgnr: initial guess dimension");
  if (options.max_iter < 0) throw std::invalid_argument("cgnr: max_iter must be >= 0");
  check_truth(options, n);
  const Precision prec = options.precision;

  SolveReport report;
  CVector x(x0.begin(), x0.end());
  CVector r(rhs.begin(), rhs.end());
  {
    const CVector ax = op.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ax[i];
  }
  CVector z = op.apply_adjoint(r);
  CVector p = z;
  double gamma = sq(norm2(z, prec));
  const double scale = norm2(op.apply_adjoint(rhs), prec);
  const double stop = options.tol * (scale > 0.0 ? scale : 1.0);
  report.residual_history.push_back(norm2(r, prec));
  report.normal_residual_history.push_back(std::sqrt(gamma));
  track_error(options, x, report);
  if (std::sqrt(gamma) <= stop) {
    report.converged = true;
    report.solution = std::move(x);
    return report;
  }
  for (int it = 1; it <= options.max_iter; ++it) {
    const CVector w = op.apply(p);
    const double ww = sq(norm2(w, prec));
    if (ww == 0.0) break;
    const double alpha = gamma / ww;
    axpy(alpha, p, x);
    axpy(-alpha, w, r);
    z = op.apply_adjoint(r);
    const double gamma_new = sq(norm2(z, prec));
    const double beta = gamma_new / gamma;
    gamma = gamma_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    report.iterations = it;
    report.residual_history.push_back(norm2(r, prec));
    report.normal_residual_history.push_back(std::sqrt(gamma));
    track_error(options, x, report);
    if (std::sqrt(gamma) <= stop) {
      report.converged = true;
      break;
    }
  }
  report.solution = std::move(x);
  return report;
}

SolveReport cgne(const LinearOperatorPair& op, std::span<const cplx> rhs,
                 const SolverOptions& options) {
  const std::size_t n = op.domain_dim();
  if (rhs.size() != op.codomain_dim()) throw std::invalid_argument("cgne: rhs dimension");
  if (options.max_iter < 0) throw std::invalid_argument("cgne: max_iter must be >= 0");
  check_truth(options, n);
  const Precision prec = options.precision;

  SolveReport report;
  CVector x(n, cplx{});
  CVector r(rhs.begin(), rhs.end());
  CVector p = op.apply_adjoint(r);
  double rr = sq(norm2(r, prec));
  const double b_norm = std::sqrt(rr);
  const double stop = options.tol * (b_norm > 0.0 ? b_norm : 1.0);
  report.residual_history.push_back(b_norm);
  report.normal_residual_history.push_back(b_norm);
  track_error(options, x, report);
  if (b_norm <= stop) {
    report.converged = true;
    report.solution = std::move(x);
    return report;
  }
  for (int it = 1; it <= options.max_iter; ++it) {
    const double pp = sq(norm2(p, prec));
    if (pp == 0.0) break;
    const double alpha = rr / pp;
    axpy(alpha, p, x);
    const CVector ap = op.apply(p);
    axpy(-alpha, ap, r);
    const double rr_new = sq(norm2(r, prec));
    const double beta = rr_new / rr;
    rr = rr_new;
    const CVector z = op.apply_adjoint(r);
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    report.iterations = it;
    report.residual_history.push_back(std::sqrt(rr));
    report.normal_residual_history.push_back(std::sqrt(rr));
    track_error(options, x, report);
    if (std::sqrt(rr) <= stop) {
      report.converged = true;
      break;
    }
  }
  report.solution = std::move(x);
  return report;
}

double midpoint_weight(MidpointWeight mode, int grid_n, double kappa) {
  if (grid_n < 1) throw std::invalid_argument("midpoint rule: grid size must be >= 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("midpoint rule: kappa must be positive");
  if (mode == MidpointWeight::fixed) return 8.0 / grid_n;
  const double h = 2.0 * kappa / grid_n;
  return h * h * h;
}

BandlimitedCoefficients midpoint_initial_guess(std::span<const cplx> grid_values,
                                               const SphericalPointSet& grid_points,
                                               int bandwidth, int grid_n, double kappa,
                                               MidpointWeight mode,
                                               const LinearOperatorPair* op) {
  if (grid_values.size() != grid_points.size()) {
    throw std::invalid_argument("midpoint rule: value/point count mismatch");
  }
  const double w = midpoint_weight(mode, grid_n, kappa);
  CVector weighted(grid_values.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    const double r = grid_points[i].r;
    weighted[i] = w * std::exp(-r * r) * grid_values[i];
  }
  if (op != nullptr) {
    if (op->domain_dim() != coefficient_count(bandwidth)) {
      throw std::invalid_argument("midpoint rule: operator bandwidth mismatch");
    }
    return BandlimitedCoefficients(bandwidth, op->apply_adjoint(weighted));
  }
  return ndsglft_naive_adjoint(weighted, grid_points, bandwidth);
}

std::unique_ptr<LinearOperatorPair> make_sgl_operator(OperatorKind kind, int bandwidth,
                                                      const SphericalPointSet& points,
                                                      const SglOptions& sgl) {
  switch (kind) {
    case OperatorKind::fast: {
      SglOptions o = sgl;
      o.last_stage = LastStage::nfft;
      return std::make_unique<SglOperator>(bandwidth, points, o);
    }
    case OperatorKind::fast_exact: {
      SglOptions o = sgl;
      o.last_stage = LastStage::ndft;
      return std::make_unique<SglOperator>(bandwidth, points, o);
    }
    case OperatorKind::naive:
      return std::make_unique<NaiveSglOperator>(bandwidth, points, sgl.exec);
    case OperatorKind::dense:
      return std::make_unique<DenseOperator>(sgl_matrix(bandwidth, points, sgl.exec));
  }
  throw std::invalid_argument("unknown operator kind");
}

SolverChoice select_solver(std::size_t points, int bandwidth) {
  return points >= coefficient_count(bandwidth) ? SolverChoice::cgnr : SolverChoice::cgne;
}

SolveReport infsglft(const SphericalPointSet& points, std::span<const cplx> values,
                     const InverseOptions& options) {
  if (values.size() != points.size()) {
    throw std::invalid_argument("infsglft: value count does not match point count");
  }
  const int B = options.bandwidth;
  const auto op = make_sgl_operator(options.op, B, points, options.sgl);
  const SolverChoice regime = select_solver(points.size(), B);
  SolverChoice choice = options.solver == SolverChoice::automatic ? regime : options.solver;
  std::string warning;
  if (choice != regime) {
    warning = choice == SolverChoice::cgnr
                  ? "cgnr chosen although there are fewer points than coefficients"
                  : "cgne chosen although there are at least as many points as coefficients";
  }
  SolveReport report;
  if (choice == SolverChoice::cgne) {
    if (options.x0 == InitialGuess::midpoint) {
      warning += warning.empty() ? "" : "; ";
      warning += "cgne starts from zero, initial guess ignored";
    }
    report = cgne(*op, values, options.solve);
  } else {
    CVector x0(coefficient_count(B), cplx{});
    if (options.x0 == InitialGuess::midpoint) {
      if (options.grid_n < 1 || !(options.kappa > 0.0)) {
        throw std::invalid_argument("infsglft: mid-point guess needs the grid size and kappa");
      }
      x0 = midpoint_initial_guess(values, points, B, options.grid_n, options.kappa,
                                  options.midpoint, op.get())
               .data;
    }
    report = cgnr(*op, values, x0, options.solve);
  }
  report.warning = warning;
  return report;
}

}  // namespace sglnufft
