#include "sglnufft/dct.hpp"

#include <stdexcept>

namespace sglnufft {

std::vector<double> chebyshev_nodes(int n) {
  if (n < 1) throw std::invalid_argument("chebyshev_nodes: n must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) w[j] = (2.0 * j + 1.0) * kPi / (2.0 * n);
  return w;
}

double dct_scale(int i, int n) {
  return i == 0 ? 1.0 / std::sqrt(static_cast<double>(n)) : std::sqrt(2.0 / n);
}

DctPlan::DctPlan(int n)
    : n_(n),
      fwd_(n >= 1 ? 2 * n : 1, FftPlan::Direction::forward),
      bwd_(n >= 1 ? 2 * n : 1, FftPlan::Direction::backward) {
  if (n < 1) throw std::invalid_argument("DctPlan: length must be >= 1");
  scale_.resize(n);
  twiddle_.resize(n);
  for (int k = 0; k < n; ++k) {
    scale_[k] = dct_scale(k, n);
    const double a = -kPi * k / (2.0 * n);
    twiddle_[k] = cplx(std::cos(a), std::sin(a));
  }
}

void DctPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != static_cast<std::size_t>(n_) || out.size() != in.size()) {
    throw std::invalid_argument("DctPlan::forward: length mismatch");
  }
  // V_i = sum_j v_j e^{-i pi i j / n} over the mirrored sequence; then
  // sum_j cos(i w_j) x_j = e^{-i pi i / 2n} V_i / 2.
  std::vector<cplx> v(2 * static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    v[j] = in[j];
    v[2 * n_ - 1 - j] = in[j];
  }
  fwd_.execute(v.data());
  for (int i = 0; i < n_; ++i) out[i] = 0.5 * scale_[i] * twiddle_[i] * v[i];
}

void DctPlan::inverse(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != static_cast<std::size_t>(n_) || out.size() != in.size()) {
    throw std::invalid_argument("DctPlan::inverse: length mismatch");
  }
  std::vector<cplx> u(2 * static_cast<std::size_t>(n_), cplx{});
  u[0] = scale_[0] * in[0];
  for (int k = 1; k < n_; ++k) {
    const cplx c = scale_[k] * in[k];
    u[k] = 0.5 * c * std::conj(twiddle_[k]);
    u[2 * n_ - k] = 0.5 * c * twiddle_[k];
  }
  bwd_.execute(u.data());
  for (int j = 0; j < n_; ++j) out[j] = u[j];
}

void DctPlan::chebyshev_coefficients(std::span<const cplx> samples,
                                     std::span<cplx> alpha) const {
  forward(samples, alpha);
  for (int k = 0; k < n_; ++k) alpha[k] *= scale_[k];
}

void DctPlan::chebyshev_coefficients_adjoint(std::span<const cplx> alpha,
                                             std::span<cplx> samples) const {
  std::vector<cplx> tmp(alpha.begin(), alpha.end());
  for (int k = 0; k < n_; ++k) tmp[k] *= scale_[k];
  inverse(tmp, samples);
}

std::vector<cplx> dct_forward(std::span<const cplx> x) {
  if (x.empty()) throw std::invalid_argument("dct_forward: empty input");
  DctPlan plan(static_cast<int>(x.size()));
  std::vector<cplx> y(x.size());
  plan.forward(x, y);
  return y;
}

std::vector<cplx> dct_inverse(std::span<const cplx> y) {
  if (y.empty()) throw std::invalid_argument("dct_inverse: empty input");
  DctPlan plan(static_cast<int>(y.size()));
  std::vector<cplx> x(y.size());
  plan.inverse(y, x);
  return x;
}

std::vector<cplx> chebyshev_coefficients(std::span<const cplx> samples) {
  if (samples.empty()) throw std::invalid_argument("chebyshev_coefficients: empty input");
  DctPlan plan(static_cast<int>(samples.size()));
  std::vector<cplx> alpha(samples.size());
  plan.chebyshev_coefficients(samples, alpha);
  return alpha;
}

}  // namespace sglnufft
