#pragma once

// Non-equispaced FFT on the torus [0, 2pi)^d, d <= 3, with the Gaussian
// window. Coefficients live on I^d_n in chi order (axis 0 fastest) and
//
//   p(t) = sum_k w_k e^{+i <k, t>}.
//
// The plan oversamples each axis to N_j = next power of two >= sigma n_j and
// uses lambda_j = sigma_j q / ((2 sigma_j - 1) pi) with the effective
// sigma_j = N_j / n_j. In grid units u = N t / 2pi the window is the normal
// density with variance lambda_j truncated to |u| <= q, and its Fourier
// factors are phi_j(k) = exp(-2 lambda_j (pi k / N_j)^2).

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "sglnufft/common.hpp"
#include "sglnufft/fft.hpp"
#include "sglnufft/index_maps.hpp"

namespace sglnufft {

/// Nodes on the torus; coordinates are reduced mod 2pi on construction.
class TorusNodeSet {
 public:
  TorusNodeSet() = default;
  TorusNodeSet(int dim, std::vector<std::array<double, 3>> nodes);

  int dim() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  const std::array<double, 3>& operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<std::array<double, 3>>& nodes() const { return nodes_; }

 private:
  int dim_ = 3;
  std::vector<std::array<double, 3>> nodes_;
};

enum class WindowMode { precomputed, on_the_fly };

struct NfftOptions {
  double sigma = 2.0;
  int q = 8;
  WindowMode window = WindowMode::precomputed;
  Exec exec = Exec::parallel;
};

class NfftPlan {
 public:
  NfftPlan(const GridShape& shape, TorusNodeSet nodes, const NfftOptions& options);

  const GridShape& shape() const { return shape_; }
  const TorusNodeSet& nodes() const { return nodes_; }
  double sigma() const { return sigma_; }
  int cutoff() const { return q_; }
  int oversampled(int axis) const { return big_[axis]; }
  double effective_sigma(int axis) const;
  double lambda(int axis) const { return lambda_[axis]; }
  /// phi_j(k) for the given axis and frequency.
  double deconvolution(int axis, int k) const;

  /// Complex slots held by the plan plus one execution buffer.
  std::size_t memory_slots() const;

  /// Approximates ndft(coeffs).
  CVector execute(std::span<const cplx> coeffs) const;
  /// Approximates ndft_adjoint(values).
  CVector adjoint(std::span<const cplx> values) const;

 private:
  void stencil(std::size_t i, std::array<int, 3>& start, double* w) const;
  std::size_t grid_size() const;

  GridShape shape_;
  TorusNodeSet nodes_;
  double sigma_;
  int q_;
  WindowMode window_;
  Exec exec_;
  std::array<int, 3> big_{1, 1, 1};
  std::array<int, 3> width_{1, 1, 1};  // stencil length per axis
  std::array<double, 3> lambda_{1.0, 1.0, 1.0};
  std::array<std::vector<double>, 3> inv_phi_;  // indexed by k + n_j/2
  std::vector<std::array<int, 3>> starts_;
  std::vector<double> weights_;  // per node: width_0 + width_1 + width_2
  std::size_t weights_per_node_ = 0;
  std::unique_ptr<FftPlan> fft_backward_;
  std::unique_ptr<FftPlan> fft_forward_;
};

/// Exact sum values_i = sum_k coeffs_k e^{i <k, t_i>}.
CVector ndft(const GridShape& shape, std::span<const cplx> coeffs, const TorusNodeSet& nodes,
             Exec exec = Exec::parallel);

/// Exact sum coeffs_k = sum_i values_i e^{-i <k, t_i>}.
CVector ndft_adjoint(const GridShape& shape, std::span<const cplx> values,
                     const TorusNodeSet& nodes, Exec exec = Exec::parallel);

/// Maximum-error certificate of the Gaussian NFFT for coefficient l1 norm
/// `l1_norm`; requires sigma >= (sqrt(d)+1)/2.
double nfft_error_bound(int dim, double sigma, int q, double l1_norm);

}  // namespace sglnufft
