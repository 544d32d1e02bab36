#include "sglnufft/sgl_transform.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sglnufft/recurrence.hpp"

namespace sglnufft {

namespace {

void check_bandwidth(int bandwidth) {
  if (bandwidth < 1) throw std::invalid_argument("bandwidth must be >= 1");
}

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::domain_error("rho must be positive");
}

SglIndex pair_to_lm(int p) {
  int l = static_cast<int>(std::sqrt(static_cast<double>(p)));
  while (l * l > p) --l;
  while ((l + 1) * (l + 1) <= p) ++l;
  return SglIndex{l + 1, l, p - l * (l + 1)};
}

// Chebyshev series in cos(w) -> Fourier coefficients over kappa in I_{4B}
// (slot kappa + 2B): kappa = 0 keeps alpha_0, +-kappa share alpha_kappa / 2.
void cosine_expand(const cplx* alpha, int B, cplx* out) {
  const int h = 2 * B;
  out[0] = 0.0;
  out[h] = alpha[0];
  for (int k = 1; k < h; ++k) out[h + k] = out[h - k] = 0.5 * alpha[k];
}

void cosine_expand_adjoint(const cplx* in, int B, cplx* alpha) {
  const int h = 2 * B;
  alpha[0] = in[h];
  for (int k = 1; k < h; ++k) alpha[k] = 0.5 * (in[h + k] + in[h - k]);
}

// sin(w) T_k(cos w) = (e^{i(k+1)w} - e^{-i(k+1)w} - e^{i(k-1)w} + e^{-i(k-1)w}) / 4i.
// Targets outside |kappa| < 2B are dropped; they only receive coefficients
// that vanish for the polynomials this map is fed.
const cplx kQuarterOverI(0.0, -0.25);

void sine_expand(const cplx* eps, int B, cplx* out) {
  const int h = 2 * B;
  std::fill(out, out + 2 * h, cplx{});
  auto add = [&](int kappa, cplx v) {
    if (kappa > -h && kappa < h) out[h + kappa] += v;
  };
  for (int k = 0; k < h; ++k) {
    const cplx v = kQuarterOverI * eps[k];
    add(k + 1, v);
    add(-(k + 1), -v);
    add(k - 1, -v);
    add(-(k - 1), v);
  }
}

void sine_expand_adjoint(const cplx* in, int B, cplx* eps) {
  const int h = 2 * B;
  auto get = [&](int kappa) { return kappa > -h && kappa < h ? in[h + kappa] : cplx{}; };
  const cplx c = std::conj(kQuarterOverI);
  for (int k = 0; k < h; ++k) {
    eps[k] = c * (get(k + 1) - get(-(k + 1)) - get(k - 1) + get(-(k - 1)));
  }
}

struct RadialNodes {
  std::vector<double> r;
  std::vector<double> r2;
};

RadialNodes radial_nodes(int B, double rho) {
  RadialNodes nodes;
  const auto w = chebyshev_nodes(2 * B);
  for (double wj : w) {
    const double r = 0.5 * rho * (1.0 + std::cos(wj));
    nodes.r.push_back(r);
    nodes.r2.push_back(r * r);
  }
  return nodes;
}

template <typename F>
void for_each_index(long long count, Exec exec, F&& body) {
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel) num_threads(worker_count())
  for (long long p = 0; p < count; ++p) body(p);
}

}  // namespace

BandlimitedCoefficients::BandlimitedCoefficients(int bandwidth_)
    : bandwidth(bandwidth_), data(sglnufft::coefficient_count(bandwidth_), cplx{}) {}

BandlimitedCoefficients::BandlimitedCoefficients(int bandwidth_, CVector data_)
    : bandwidth(bandwidth_), data(std::move(data_)) {
  if (data.size() != sglnufft::coefficient_count(bandwidth)) {
    throw std::invalid_argument("coefficient vector length " + std::to_string(data.size()) +
                                " does not match bandwidth " + std::to_string(bandwidth));
  }
  for (const auto& v : data) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::domain_error("coefficient vector has non-finite entries");
    }
  }
}

void validate(const SphericalPointSet& points) {
  for (const auto& p : points) validate(p);
}

CVector ndsglft_naive(const BandlimitedCoefficients& coeffs, const SphericalPointSet& points,
                      Exec exec) {
  validate(points);
  const int B = coeffs.bandwidth;
  CVector out(points.size());
  for_each_index(static_cast<long long>(points.size()), exec, [&](long long i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    cplx sum{};
    std::size_t mu = 0;
    for (int n = 1; n <= B; ++n) {
      for (int l = 0; l < n; ++l) {
        for (int m = -l; m <= l; ++m, ++mu) {
          if (coeffs.data[mu] != cplx{}) sum += coeffs.data[mu] * sgl_basis_eval({n, l, m}, p);
        }
      }
    }
    out[static_cast<std::size_t>(i)] = sum;
  });
  return out;
}

BandlimitedCoefficients ndsglft_naive_adjoint(std::span<const cplx> values,
                                              const SphericalPointSet& points, int bandwidth,
                                              Exec exec) {
  check_bandwidth(bandwidth);
  validate(points);
  if (values.size() != points.size()) {
    throw std::invalid_argument("adjoint: value count does not match point count");
  }
  BandlimitedCoefficients out(bandwidth);
  for_each_index(static_cast<long long>(out.data.size()), exec, [&](long long mu) {
    const SglIndex idx = mu_to_nlm(static_cast<std::size_t>(mu), bandwidth);
    cplx sum{};
    for (std::size_t i = 0; i < points.size(); ++i) {
      sum += std::conj(sgl_basis_eval(idx, points[i])) * values[i];
    }
    out.data[static_cast<std::size_t>(mu)] = sum;
  });
  return out;
}

double choose_rho(const SphericalPointSet& points) {
  double rho = 0.0;
  for (const auto& p : points) rho = std::max(rho, p.r);
  return rho > 0.0 ? rho : 1.0;
}

double radial_gamma(double r, double rho) {
  check_rho(rho);
  return (2.0 * r - rho) / rho;
}

TorusNodeSet transform_points(const SphericalPointSet& points, double rho) {
  check_rho(rho);
  validate(points);
  std::vector<std::array<double, 3>> nodes;
  nodes.reserve(points.size());
  for (const auto& p : points) {
    if (p.r > rho) {
      throw std::domain_error("point radius " + std::to_string(p.r) + " exceeds rho " +
                              std::to_string(rho));
    }
    const double g = std::clamp(radial_gamma(p.r, rho), -1.0, 1.0);
    nodes.push_back({std::acos(g), p.theta, p.phi});
  }
  return TorusNodeSet(3, std::move(nodes));
}

RadialBeta::RadialBeta(int bandwidth_) : bandwidth(bandwidth_) {
  data.assign(perm_U_size(bandwidth), cplx{});
}

std::size_t RadialBeta::index(int kappa, int l, int m) const {
  return perm_U(psi_index(l, m, kappa + 2 * bandwidth, bandwidth), bandwidth);
}

SphericalZeta::SphericalZeta(int bandwidth_) : bandwidth(bandwidth_) {
  data.assign(4 * static_cast<std::size_t>(bandwidth) * perm_X_size(bandwidth), cplx{});
}

std::size_t SphericalZeta::index(int kappa0, int kappa1, int m) const {
  const std::size_t block = perm_X_size(bandwidth);
  return static_cast<std::size_t>(kappa0 + 2 * bandwidth) * block +
         perm_X(iota_index(m, kappa1, bandwidth), bandwidth);
}

cplx TrigVolume::at(int k0, int k1, int k2) const {
  const FreqIndex3 k{k0, k1, k2};
  return shape.contains(k) ? eta[k_to_chi(k, shape)] : cplx{};
}

RadialBeta radial_subtransform(const BandlimitedCoefficients& coeffs, double rho,
                               const StageOptions& options) {
  const int B = coeffs.bandwidth;
  check_bandwidth(B);
  check_rho(rho);
  if (coeffs.data.size() != coefficient_count(B)) {
    throw std::invalid_argument("radial_subtransform: coefficient length mismatch");
  }
  const auto nodes = radial_nodes(B, rho);
  const DctPlan dct(2 * B);
  // S^T: (n, l, m) order -> (l, m, n) order
  CVector v(coeffs.data.size());
  for (std::size_t mu = 0; mu < v.size(); ++mu) v[perm_S(mu, B)] = coeffs.data[mu];

  RadialBeta beta(B);
  for_each_index(static_cast<long long>(B) * B, options.exec, [&](long long p) {
    const SglIndex lm = pair_to_lm(static_cast<int>(p));
    const int l = lm.l;
    const std::size_t start = perm_S(nlm_to_mu({l + 1, l, lm.m}), B);
    const NormalizedLaguerreRecurrence rec(l, B);
    auto samples = clenshaw_eval(rec, std::span<const cplx>(v.data() + start, B - l),
                                 std::span<const double>(nodes.r2), options.precision);
    for (int j = 0; j < 2 * B; ++j) samples[j] *= std::pow(nodes.r[j], l);
    CVector alpha(2 * B), expanded(4 * B);
    dct.chebyshev_coefficients(samples, alpha);
    cosine_expand(alpha.data(), B, expanded.data());
    for (int k = 0; k < 4 * B; ++k) beta.data[beta.index(k - 2 * B, l, lm.m)] = expanded[k];
  });
  return beta;
}

BandlimitedCoefficients radial_subtransform_adjoint(const RadialBeta& beta, double rho,
                                                    const StageOptions& options) {
  const int B = beta.bandwidth;
  check_bandwidth(B);
  check_rho(rho);
  const auto nodes = radial_nodes(B, rho);
  const DctPlan dct(2 * B);
  CVector v(coefficient_count(B));
  for_each_index(static_cast<long long>(B) * B, options.exec, [&](long long p) {
    const SglIndex lm = pair_to_lm(static_cast<int>(p));
    const int l = lm.l;
    CVector expanded(4 * B), alpha(2 * B), samples(2 * B);
    for (int k = 0; k < 4 * B; ++k) expanded[k] = beta.data[beta.index(k - 2 * B, l, lm.m)];
    cosine_expand_adjoint(expanded.data(), B, alpha.data());
    dct.chebyshev_coefficients_adjoint(alpha, samples);
    for (int j = 0; j < 2 * B; ++j) samples[j] *= std::pow(nodes.r[j], l);
    const NormalizedLaguerreRecurrence rec(l, B);
    const auto out = clenshaw_adjoint(rec, std::span<const cplx>(samples),
                                      std::span<const double>(nodes.r2), B - l,
                                      options.precision);
    const std::size_t start = perm_S(nlm_to_mu({l + 1, l, lm.m}), B);
    std::copy(out.begin(), out.end(), v.begin() + static_cast<std::ptrdiff_t>(start));
  });
  BandlimitedCoefficients coeffs(B);
  for (std::size_t mu = 0; mu < v.size(); ++mu) coeffs.data[mu] = v[perm_S(mu, B)];
  return coeffs;
}

SphericalZeta spherical_subtransform(const RadialBeta& beta, const StageOptions& options) {
  const int B = beta.bandwidth;
  check_bandwidth(B);
  const DctPlan dct(2 * B);
  SphericalZeta zeta(B);
  const long long rows = 2LL * B - 1;
  // kappa0 = -2B carries no data, so the loop starts one block later.
  for_each_index((4LL * B - 1) * rows, options.exec, [&](long long p) {
    const int kappa0 = static_cast<int>(p / rows) + 1 - 2 * B;
    const int m = static_cast<int>(p % rows) - (B - 1);
    const int am = std::abs(m);
    const bool odd = am % 2 != 0;
    CVector c(B - am), eps(2 * B), expanded(4 * B);
    bool nonzero = false;
    for (int l = am; l < B; ++l) {
      c[l - am] = beta.at(kappa0, l, m) * sph_norm(l, m);
      nonzero = nonzero || c[l - am] != cplx{};
    }
    if (!nonzero) return;
    const auto h = dlt_adjoint(m, B, c, odd, options.precision);
    dct.chebyshev_coefficients(h, eps);
    if (odd) {
      sine_expand(eps.data(), B, expanded.data());
    } else {
      cosine_expand(eps.data(), B, expanded.data());
    }
    for (int k = 0; k < 4 * B; ++k) zeta.data[zeta.index(kappa0, k - 2 * B, m)] = expanded[k];
  });
  return zeta;
}

RadialBeta spherical_subtransform_adjoint(const SphericalZeta& zeta,
                                          const StageOptions& options) {
  const int B = zeta.bandwidth;
  check_bandwidth(B);
  const DctPlan dct(2 * B);
  RadialBeta beta(B);
  const long long rows = 2LL * B - 1;
  for_each_index((4LL * B - 1) * rows, options.exec, [&](long long p) {
    const int kappa0 = static_cast<int>(p / rows) + 1 - 2 * B;
    const int m = static_cast<int>(p % rows) - (B - 1);
    const int am = std::abs(m);
    const bool odd = am % 2 != 0;
    CVector expanded(4 * B), eps(2 * B), h(2 * B);
    bool nonzero = false;
    for (int k = 0; k < 4 * B; ++k) {
      expanded[k] = zeta.at(kappa0, k - 2 * B, m);
      nonzero = nonzero || expanded[k] != cplx{};
    }
    if (!nonzero) return;
    if (odd) {
      sine_expand_adjoint(expanded.data(), B, eps.data());
    } else {
      cosine_expand_adjoint(expanded.data(), B, eps.data());
    }
    dct.chebyshev_coefficients_adjoint(eps, h);
    const auto c = dlt_weighted(m, B, h, odd, options.precision);
    for (int l = am; l < B; ++l) beta.data[beta.index(kappa0, l, m)] = c[l - am] * sph_norm(l, m);
  });
  return beta;
}

GridShape sgl_grid_shape(int bandwidth, GridChoice choice) {
  check_bandwidth(bandwidth);
  GridShape shape;
  shape.dim = 3;
  const int b4 = 4 * bandwidth;
  const int b2 = 2 * bandwidth;
  switch (choice) {
    case GridChoice::support: shape.n = {b4, b4, b2}; break;
    case GridChoice::reduced: shape.n = {b4, b2, b2}; break;
    case GridChoice::cube: shape.n = {b4, b4, b4}; break;
  }
  return shape;
}

TrigVolume assemble_trig_volume(const SphericalZeta& zeta, const GridShape& shape) {
  const int B = zeta.bandwidth;
  if (shape.dim != 3 || shape.n[0] < 4 * B || shape.n[2] < 2 * B) {
    throw std::invalid_argument("assemble_trig_volume: grid does not cover the eta support");
  }
  TrigVolume vol;
  vol.bandwidth = B;
  vol.shape = shape;
  vol.eta.assign(shape.size(), cplx{});
  for (int k0 = -2 * B; k0 < 2 * B; ++k0) {
    for (int k1 = -2 * B; k1 < 2 * B; ++k1) {
      for (int m = 1 - B; m < B; ++m) {
        const FreqIndex3 k{k0, k1, m};
        if (!shape.contains(k)) continue;
        vol.eta[k_to_chi(k, shape)] = zeta.at(k0, k1, m);
      }
    }
  }
  return vol;
}

SphericalZeta extract_trig_volume(const TrigVolume& volume) {
  const int B = volume.bandwidth;
  SphericalZeta zeta(B);
  for (int k0 = -2 * B; k0 < 2 * B; ++k0) {
    for (int k1 = -2 * B; k1 < 2 * B; ++k1) {
      for (int m = 1 - B; m < B; ++m) {
        zeta.data[zeta.index(k0, k1, m)] = volume.at(k0, k1, m);
      }
    }
  }
  return zeta;
}

SglPlan::SglPlan(int bandwidth, SphericalPointSet points, const SglOptions& options)
    : bandwidth_(bandwidth), points_(std::move(points)), options_(options) {
  check_bandwidth(bandwidth_);
  validate(points_);
  rho_ = options_.rho > 0.0 ? options_.rho : choose_rho(points_);
  nodes_ = transform_points(points_, rho_);
  grid_ = sgl_grid_shape(bandwidth_, options_.grid);
  if (options_.last_stage == LastStage::nfft) {
    if (options_.q >= 4.0 * options_.sigma * bandwidth_) {
      throw std::invalid_argument("cutoff q must be < 4 sigma B");
    }
    // Small axes are zero-padded until q < sigma n holds on each of them.
    for (int j = 0; j < 3; ++j) {
      while (options_.q >= options_.sigma * grid_.n[j]) grid_.n[j] += 2;
    }
    NfftOptions nopt;
    nopt.sigma = options_.sigma;
    nopt.q = options_.q;
    nopt.window = options_.window;
    nopt.exec = options_.exec;
    nfft_ = std::make_unique<NfftPlan>(grid_, nodes_, nopt);
  }
}

std::size_t SglPlan::coefficient_count() const { return sglnufft::coefficient_count(bandwidth_); }

CVector SglPlan::forward(const BandlimitedCoefficients& coeffs) const {
  if (coeffs.bandwidth != bandwidth_ || coeffs.data.size() != coefficient_count()) {
    throw std::invalid_argument("SglPlan::forward: bandwidth mismatch");
  }
  const StageOptions stage{options_.precision, options_.exec};
  const auto beta = radial_subtransform(coeffs, rho_, stage);
  const auto zeta = spherical_subtransform(beta, stage);
  const auto vol = assemble_trig_volume(zeta, grid_);
  if (nfft_) return nfft_->execute(vol.eta);
  return ndft(grid_, vol.eta, nodes_, options_.exec);
}

BandlimitedCoefficients SglPlan::adjoint(std::span<const cplx> values) const {
  if (values.size() != points_.size()) {
    throw std::invalid_argument("SglPlan::adjoint: value count mismatch");
  }
  const StageOptions stage{options_.precision, options_.exec};
  TrigVolume vol;
  vol.bandwidth = bandwidth_;
  vol.shape = grid_;
  vol.eta = nfft_ ? nfft_->adjoint(values) : ndft_adjoint(grid_, values, nodes_, options_.exec);
  const auto zeta = extract_trig_volume(vol);
  const auto beta = spherical_subtransform_adjoint(zeta, stage);
  return radial_subtransform_adjoint(beta, rho_, stage);
}

CVector nfsglft_forward(const BandlimitedCoefficients& coeffs, const SphericalPointSet& points,
                        const SglOptions& options) {
  return SglPlan(coeffs.bandwidth, points, options).forward(coeffs);
}

BandlimitedCoefficients nfsglft_adjoint(std::span<const cplx> values,
                                        const SphericalPointSet& points, int bandwidth,
                                        const SglOptions& options) {
  return SglPlan(bandwidth, points, options).adjoint(values);
}

double omega_threshold(double rho) {
  check_rho(rho);
  const double e = std::numbers::e;
  const double c = std::exp(2.0 / e);
  // (rho^{2/e} - 1) / ln rho tends to 2/e at rho = 1
  const double ratio =
      std::abs(rho - 1.0) < 1e-12 ? 2.0 / e : (std::pow(rho, 2.0 / e) - 1.0) / std::log(rho);
  return std::pow(c * ratio / 2.0, 1.0 - 1.0 / e) - 0.5;
}

double nfsglft_error_bound(int bandwidth, double rho, int q, double l1_norm) {
  check_bandwidth(bandwidth);
  check_rho(rho);
  const double e = std::numbers::e;
  const double B = bandwidth;
  const bool small = rho < 1.0 && B <= omega_threshold(rho);
  const double a = small ? 1.0 : 1.0 / rho;
  const double b = 0.5 * std::exp(2.0 / e) * (small ? 1.0 : std::pow(rho, 2.0 / e));
  return std::pow(B, 3.5) * a *
         std::exp(b * std::pow(B + 0.5, 1.0 - 1.0 / e) + 0.5 * rho * rho - q * kPi / 2.0) *
         l1_norm;
}

}  // namespace sglnufft
