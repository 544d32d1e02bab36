#pragma once

// Orthogonal DCT at Chebyshev nodes,
//
//   y_i = d_i sum_j cos(i w_j) x_j,   w_j = (2j+1) pi / 2n,
//   d_0 = 1/sqrt(n), d_i = sqrt(2/n) otherwise,
//
// i.e. the matrix D_n C_n. Both directions run through one length-2n FFT of
// the even-symmetric extension, so complex input costs nothing extra.

#include <span>
#include <vector>

#include "sglnufft/common.hpp"
#include "sglnufft/fft.hpp"

namespace sglnufft {

/// Chebyshev node angles w_j = (2j+1) pi / 2n, j = 0..n-1.
std::vector<double> chebyshev_nodes(int n);

/// Row scaling d_i of the orthogonal DCT.
double dct_scale(int i, int n);

class DctPlan {
 public:
  explicit DctPlan(int n);

  int length() const { return n_; }

  /// out = D C x. `in` and `out` may alias.
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  /// out = (D C)^T y = (D C)^{-1} y. `in` and `out` may alias.
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

  /// Chebyshev coefficients of the polynomial sampled at cos(w_j):
  /// alpha = D (D C) p.
  void chebyshev_coefficients(std::span<const cplx> samples, std::span<cplx> alpha) const;
  /// Transpose of chebyshev_coefficients: p = (D C)^T D alpha.
  void chebyshev_coefficients_adjoint(std::span<const cplx> alpha, std::span<cplx> samples) const;

 private:
  int n_;
  std::vector<double> scale_;
  std::vector<cplx> twiddle_;  // e^{-i pi k / 2n}
  FftPlan fwd_;
  FftPlan bwd_;
};

std::vector<cplx> dct_forward(std::span<const cplx> x);
std::vector<cplx> dct_inverse(std::span<const cplx> y);
std::vector<cplx> chebyshev_coefficients(std::span<const cplx> samples);

}  // namespace sglnufft
