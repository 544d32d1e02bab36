#include "sglnufft/nfft.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sglnufft {

namespace {

int next_pow2(double x) {
  int p = 1;
  while (p < x) p *= 2;
  return p;
}

int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

void check_coeffs(const GridShape& shape, std::size_t size) {
  if (size != shape.size()) {
    throw std::invalid_argument("coefficient vector does not match the frequency grid (" +
                                std::to_string(size) + " vs " +
                                std::to_string(shape.size()) + ")");
  }
}

// e^{i k t} for k = -n/2 .. n/2-1, by repeated multiplication with a
// periodic reset to keep the phase error from drifting.
void fill_phases(double t, int n, cplx* out) {
  const cplx step(std::cos(t), std::sin(t));
  const double k0 = -n / 2;
  cplx cur(std::cos(k0 * t), std::sin(k0 * t));
  for (int a = 0; a < n; ++a) {
    if (a % 16 == 0) {
      const double k = k0 + a;
      cur = cplx(std::cos(k * t), std::sin(k * t));
    }
    out[a] = cur;
    cur *= step;
  }
}

}  // namespace

TorusNodeSet::TorusNodeSet(int dim, std::vector<std::array<double, 3>> nodes)
    : dim_(dim), nodes_(std::move(nodes)) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("TorusNodeSet: dimension must be 1..3");
  for (auto& t : nodes_) {
    for (int j = 0; j < 3; ++j) {
      if (!std::isfinite(t[j])) throw std::domain_error("TorusNodeSet: non-finite node");
      if (j >= dim) {
        t[j] = 0.0;
        continue;
      }
      double r = std::fmod(t[j], kTwoPi);
      if (r < 0.0) r += kTwoPi;
      if (r >= kTwoPi) r = 0.0;
      t[j] = r;
    }
  }
}

NfftPlan::NfftPlan(const GridShape& shape, TorusNodeSet nodes, const NfftOptions& options)
    : shape_(shape),
      nodes_(std::move(nodes)),
      sigma_(options.sigma),
      q_(options.q),
      window_(options.window),
      exec_(options.exec) {
  const int d = shape_.dim;
  if (d != nodes_.dim()) throw std::invalid_argument("NfftPlan: node/grid dimension mismatch");
  const double min_sigma = d == 3 ? 2.0 : (std::sqrt(static_cast<double>(d)) + 1.0) / 2.0;
  if (!(sigma_ >= min_sigma)) {
    throw std::invalid_argument("NfftPlan: oversampling factor too small for this dimension");
  }
  if (q_ < 1) throw std::invalid_argument("NfftPlan: cutoff must be >= 1");
  for (int j = 0; j < d; ++j) {
    const int n = shape_.n[j];
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("NfftPlan: degrees must be even");
    if (q_ >= sigma_ * n) {
      throw std::invalid_argument("NfftPlan: cutoff q must be < sigma * n on every axis");
    }
    big_[j] = next_pow2(sigma_ * n);
    width_[j] = 2 * q_ + 1;
    const double s = static_cast<double>(big_[j]) / n;
    lambda_[j] = s * q_ / ((2.0 * s - 1.0) * kPi);
    inv_phi_[j].resize(n);
    for (int a = 0; a < n; ++a) {
      const double k = a - n / 2;
      const double x = kPi * k / big_[j];
      inv_phi_[j][a] = std::exp(2.0 * lambda_[j] * x * x);
    }
  }
  for (int j = d; j < 3; ++j) inv_phi_[j].assign(1, 1.0);

  weights_per_node_ = static_cast<std::size_t>(width_[0] + width_[1] + width_[2]);
  if (window_ == WindowMode::precomputed) {
    const std::size_t m = nodes_.size();
    starts_.resize(m);
    weights_.resize(m * weights_per_node_);
    for (std::size_t i = 0; i < m; ++i) stencil(i, starts_[i], &weights_[i * weights_per_node_]);
  }
  fft_backward_ = std::make_unique<FftPlan>(d, big_, FftPlan::Direction::backward);
  fft_forward_ = std::make_unique<FftPlan>(d, big_, FftPlan::Direction::forward);
}

double NfftPlan::effective_sigma(int axis) const {
  return static_cast<double>(big_[axis]) / shape_.n[axis];
}

double NfftPlan::deconvolution(int axis, int k) const {
  const double x = kPi * k / big_[axis];
  return std::exp(-2.0 * lambda_[axis] * x * x);
}

std::size_t NfftPlan::grid_size() const {
  return static_cast<std::size_t>(big_[0]) * big_[1] * big_[2];
}

std::size_t NfftPlan::memory_slots() const {
  // window tables count as half a complex slot per double
  return grid_size() + (weights_.size() + 1) / 2 + starts_.size() * 3 / 4;
}

void NfftPlan::stencil(std::size_t i, std::array<int, 3>& start, double* w) const {
  const auto& t = nodes_[i];
  double* out = w;
  for (int j = 0; j < 3; ++j) {
    if (j >= shape_.dim) {
      start[j] = 0;
      *out++ = 1.0;
      continue;
    }
    const double u = big_[j] * t[j] / kTwoPi;
    const int base = static_cast<int>(std::floor(u)) - q_;
    start[j] = base;
    const double norm = 1.0 / std::sqrt(kTwoPi * lambda_[j]);
    for (int a = 0; a < width_[j]; ++a) {
      const double x = u - (base + a);
      *out++ = std::abs(x) <= q_ ? norm * std::exp(-x * x / (2.0 * lambda_[j])) : 0.0;
    }
  }
}

CVector NfftPlan::execute(std::span<const cplx> coeffs) const {
  check_coeffs(shape_, coeffs.size());
  const auto [N0, N1, N2] = big_;
  const auto [n0, n1, n2] = shape_.n;
  CVector g(grid_size(), cplx{});
  for (int c = 0; c < n2; ++c) {
    const int gc = wrap(c - n2 / 2, N2);
    for (int b = 0; b < n1; ++b) {
      const int gb = wrap(b - n1 / 2, N1);
      const double s12 = inv_phi_[2][c] * inv_phi_[1][b];
      const std::size_t row = static_cast<std::size_t>(N0) * (gb + static_cast<std::size_t>(N1) * gc);
      const std::size_t src = static_cast<std::size_t>(n0) * (b + static_cast<std::size_t>(n1) * c);
      for (int a = 0; a < n0; ++a) {
        g[row + wrap(a - n0 / 2, N0)] = coeffs[src + a] * (s12 * inv_phi_[0][a]);
      }
    }
  }
  fft_backward_->execute(g.data());

  const std::size_t m = nodes_.size();
  CVector out(m);
  const auto [w0, w1, w2] = width_;
  const long long mm = static_cast<long long>(m);
#pragma omp parallel if (exec_ == Exec::parallel) num_threads(worker_count())
  {
    std::vector<double> local(weights_per_node_);
    std::array<int, 3> start_local{};
    std::vector<int> i0(w0), i1(w1), i2(w2);
#pragma omp for schedule(static)
    for (long long ii = 0; ii < mm; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const double* w;
      const std::array<int, 3>* st;
      if (window_ == WindowMode::precomputed) {
        w = &weights_[i * weights_per_node_];
        st = &starts_[i];
      } else {
        stencil(i, start_local, local.data());
        w = local.data();
        st = &start_local;
      }
      const double* wa = w;
      const double* wb = w + w0;
      const double* wc = w + w0 + w1;
      for (int a = 0; a < w0; ++a) i0[a] = wrap((*st)[0] + a, N0);
      for (int b = 0; b < w1; ++b) i1[b] = wrap((*st)[1] + b, N1);
      for (int c = 0; c < w2; ++c) i2[c] = wrap((*st)[2] + c, N2);
      cplx sum{};
      for (int c = 0; c < w2; ++c) {
        if (wc[c] == 0.0) continue;
        cplx sb{};
        for (int b = 0; b < w1; ++b) {
          if (wb[b] == 0.0) continue;
          const cplx* rowp = &g[static_cast<std::size_t>(N0) *
                                (i1[b] + static_cast<std::size_t>(N1) * i2[c])];
          cplx sa{};
          for (int a = 0; a < w0; ++a) sa += wa[a] * rowp[i0[a]];
          sb += wb[b] * sa;
        }
        sum += wc[c] * sb;
      }
      out[i] = sum;
    }
  }
  return out;
}

CVector NfftPlan::adjoint(std::span<const cplx> values) const {
  const std::size_t m = nodes_.size();
  if (values.size() != m) throw std::invalid_argument("NfftPlan::adjoint: value count mismatch");
  const auto [N0, N1, N2] = big_;
  const auto [w0, w1, w2] = width_;
  CVector g(grid_size(), cplx{});
  // The slowest grid axis is split into slabs, one per thread; every thread
  // walks all nodes and only writes into its own slab, so no reduction is
  // needed and the summation order does not depend on the thread count.
  const int slow = shape_.dim - 1;
  const int slow_n = big_[slow];
#pragma omp parallel if (exec_ == Exec::parallel) num_threads(worker_count())
  {
    const int nt = omp_get_num_threads();
    const int tid = omp_get_thread_num();
    const int lo = static_cast<int>(static_cast<long long>(slow_n) * tid / nt);
    const int hi = static_cast<int>(static_cast<long long>(slow_n) * (tid + 1) / nt);
    std::vector<double> local(weights_per_node_);
    std::array<int, 3> start_local{};
    std::vector<int> i0(w0), i1(w1), i2(w2);
    for (std::size_t i = 0; i < m && lo < hi; ++i) {
      const double* w;
      const std::array<int, 3>* st;
      if (window_ == WindowMode::precomputed) {
        w = &weights_[i * weights_per_node_];
        st = &starts_[i];
      } else {
        stencil(i, start_local, local.data());
        w = local.data();
        st = &start_local;
      }
      const double* wa = w;
      const double* wb = w + w0;
      const double* wc = w + w0 + w1;
      for (int a = 0; a < w0; ++a) i0[a] = wrap((*st)[0] + a, N0);
      for (int b = 0; b < w1; ++b) i1[b] = wrap((*st)[1] + b, N1);
      for (int c = 0; c < w2; ++c) i2[c] = wrap((*st)[2] + c, N2);
      const std::vector<int>& islow = slow == 0 ? i0 : (slow == 1 ? i1 : i2);
      bool any = false;
      for (int v : islow) any = any || (v >= lo && v < hi);
      if (!any) continue;
      const cplx v = values[i];
      for (int c = 0; c < w2; ++c) {
        if (wc[c] == 0.0 || (slow == 2 && (i2[c] < lo || i2[c] >= hi))) continue;
        for (int b = 0; b < w1; ++b) {
          if (wb[b] == 0.0 || (slow == 1 && (i1[b] < lo || i1[b] >= hi))) continue;
          const cplx vb = v * (wc[c] * wb[b]);
          cplx* rowp = &g[static_cast<std::size_t>(N0) *
                          (i1[b] + static_cast<std::size_t>(N1) * i2[c])];
          for (int a = 0; a < w0; ++a) {
            if (slow == 0 && (i0[a] < lo || i0[a] >= hi)) continue;
            rowp[i0[a]] += wa[a] * vb;
          }
        }
      }
    }
  }
  fft_forward_->execute(g.data());

  const auto [n0, n1, n2] = shape_.n;
  CVector out(shape_.size());
  for (int c = 0; c < n2; ++c) {
    const int gc = wrap(c - n2 / 2, N2);
    for (int b = 0; b < n1; ++b) {
      const int gb = wrap(b - n1 / 2, N1);
      const double s12 = inv_phi_[2][c] * inv_phi_[1][b];
      const std::size_t row = static_cast<std::size_t>(N0) * (gb + static_cast<std::size_t>(N1) * gc);
      const std::size_t dst = static_cast<std::size_t>(n0) * (b + static_cast<std::size_t>(n1) * c);
      for (int a = 0; a < n0; ++a) {
        out[dst + a] = g[row + wrap(a - n0 / 2, N0)] * (s12 * inv_phi_[0][a]);
      }
    }
  }
  return out;
}

CVector ndft(const GridShape& shape, std::span<const cplx> coeffs, const TorusNodeSet& nodes,
             Exec exec) {
  check_coeffs(shape, coeffs.size());
  if (shape.dim != nodes.dim()) throw std::invalid_argument("ndft: dimension mismatch");
  const auto [n0, n1, n2] = shape.n;
  const long long m = static_cast<long long>(nodes.size());
  CVector out(nodes.size());
#pragma omp parallel if (exec == Exec::parallel) num_threads(worker_count())
  {
    CVector e0(n0), e1(n1), e2(n2);
#pragma omp for schedule(static)
    for (long long i = 0; i < m; ++i) {
      const auto& t = nodes[static_cast<std::size_t>(i)];
      fill_phases(t[0], n0, e0.data());
      fill_phases(t[1], n1, e1.data());
      fill_phases(t[2], n2, e2.data());
      if (shape.dim < 2) e1[0] = 1.0;
      if (shape.dim < 3) e2[0] = 1.0;
      cplx sum{};
      std::size_t idx = 0;
      for (int c = 0; c < n2; ++c) {
        cplx sb{};
        for (int b = 0; b < n1; ++b) {
          cplx sa{};
          for (int a = 0; a < n0; ++a) sa += coeffs[idx++] * e0[a];
          sb += sa * e1[b];
        }
        sum += sb * e2[c];
      }
      out[static_cast<std::size_t>(i)] = sum;
    }
  }
  return out;
}

CVector ndft_adjoint(const GridShape& shape, std::span<const cplx> values,
                     const TorusNodeSet& nodes, Exec exec) {
  if (values.size() != nodes.size()) throw std::invalid_argument("ndft_adjoint: length mismatch");
  if (shape.dim != nodes.dim()) throw std::invalid_argument("ndft_adjoint: dimension mismatch");
  const auto [n0, n1, n2] = shape.n;
  CVector out(shape.size(), cplx{});
  const std::size_t m = nodes.size();
  // Parallel over the slowest frequency axis; each output owned by one thread.
  const int slow = shape.dim - 1;
  const int slow_n = shape.n[slow];
#pragma omp parallel if (exec == Exec::parallel) num_threads(worker_count())
  {
    const int nt = omp_get_num_threads();
    const int tid = omp_get_thread_num();
    const int lo = slow_n * tid / nt;
    const int hi = slow_n * (tid + 1) / nt;
    CVector e0(n0), e1(n1), e2(n2);
    for (std::size_t i = 0; i < m && lo < hi; ++i) {
      const auto& t = nodes[i];
      fill_phases(-t[0], n0, e0.data());
      fill_phases(-t[1], n1, e1.data());
      fill_phases(-t[2], n2, e2.data());
      if (shape.dim < 2) e1[0] = 1.0;
      if (shape.dim < 3) e2[0] = 1.0;
      const cplx v = values[i];
      for (int c = 0; c < n2; ++c) {
        if (slow == 2 && (c < lo || c >= hi)) continue;
        const cplx vc = v * e2[c];
        for (int b = 0; b < n1; ++b) {
          if (slow == 1 && (b < lo || b >= hi)) continue;
          const cplx vb = vc * e1[b];
          cplx* row = &out[static_cast<std::size_t>(n0) * (b + static_cast<std::size_t>(n1) * c)];
          for (int a = 0; a < n0; ++a) {
            if (slow == 0 && (a < lo || a >= hi)) continue;
            row[a] += vb * e0[a];
          }
        }
      }
    }
  }
  return out;
}

double nfft_error_bound(int dim, double sigma, int q, double l1_norm) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("nfft_error_bound: dimension 1..3");
  if (q < 1) throw std::invalid_argument("nfft_error_bound: q must be >= 1");
  if (!(sigma >= (std::sqrt(static_cast<double>(dim)) + 1.0) / 2.0)) {
    throw std::invalid_argument("nfft_error_bound: sigma below the admissible range");
  }
  const double d = dim;
  const double qq = q;
  const double t1 = (std::pow(2.0, d) - 1.0) * std::pow(2.0 + 1.0 / (kPi * qq), d);
  const double inner = std::sqrt((2.0 * sigma - 1.0) / (2.0 * sigma)) +
                       std::sqrt(2.0 * sigma / (2.0 * sigma - 1.0)) / (2.0 * kPi);
  const double t2 = (std::pow(3.0, d) - 1.0) / std::pow(qq, d / 2.0) * std::pow(inner, d);
  const double rate = 1.0 - (1.0 + d / (2.0 * sigma - 1.0)) / (2.0 * sigma);
  return l1_norm * (t1 + t2) * std::exp(-qq * kPi * rate);
}

}  // namespace sglnufft
