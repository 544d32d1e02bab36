#pragma once

// Spherical Gauss-Laguerre transforms at scattered points in R^3.
//
// Forward: f(x_i) = sum_mu fhat_mu H_mu(x_i). The fast path factors this as
//
//   radial stage      g_lm(r) = sum_n fhat_nlm N_nl R_nl(r) sampled at the
//                     2B Chebyshev radii, turned into cosine coefficients
//                     beta[kappa0, l, m] in the variable arccos gamma(r);
//   spherical stage   h_{kappa0,m}(cos t) = sum_l beta Q_lm P_lm(cos t),
//                     turned into Fourier coefficients zeta[kappa0, kappa1, m]
//                     in t (odd m through the 1/sin weighting);
//   last stage        a 3-D trigonometric sum over eta = zeta at the nodes
//                     (arccos gamma(r_i), theta_i, phi_i), via NFFT or NDFT.
//
// Everything before the last stage is exact, so with the NDFT the fast path
// reproduces the naive sum to round-off. gamma(r) = (2r - rho)/rho maps
// [0, rho] onto [-1, 1].

#include <memory>
#include <span>
#include <vector>

#include "sglnufft/common.hpp"
#include "sglnufft/dct.hpp"
#include "sglnufft/index_maps.hpp"
#include "sglnufft/nfft.hpp"
#include "sglnufft/special_functions.hpp"

namespace sglnufft {

using SphericalPointSet = std::vector<SphericalPoint>;

/// SGL coefficients of bandwidth B in mu order.
struct BandlimitedCoefficients {
  BandlimitedCoefficients() = default;
  explicit BandlimitedCoefficients(int bandwidth);
  BandlimitedCoefficients(int bandwidth, CVector data);

  int bandwidth = 1;
  CVector data;

  cplx& operator[](const SglIndex& idx) { return data[nlm_to_mu(idx)]; }
  cplx operator[](const SglIndex& idx) const { return data[nlm_to_mu(idx)]; }
};

void validate(const SphericalPointSet& points);

/// Direct summation, one special-function evaluation per basis function and
/// point. The reference all fast paths are measured against.
CVector ndsglft_naive(const BandlimitedCoefficients& coeffs, const SphericalPointSet& points,
                      Exec exec = Exec::parallel);

/// Direct conjugated sum out_mu = sum_i conj(H_mu(x_i)) values_i.
BandlimitedCoefficients ndsglft_naive_adjoint(std::span<const cplx> values,
                                              const SphericalPointSet& points, int bandwidth,
                                              Exec exec = Exec::parallel);

/// Largest radius; 1 when every radius is zero.
double choose_rho(const SphericalPointSet& points);

/// gamma(r) = (2r - rho) / rho.
double radial_gamma(double r, double rho);

/// Nodes (arccos gamma(r_i), theta_i, phi_i); throws if some r_i > rho.
TorusNodeSet transform_points(const SphericalPointSet& points, double rho);

/// beta[kappa, l, m] for kappa in I_{4B}, stored in (kappa, m, l) order.
struct RadialBeta {
  explicit RadialBeta(int bandwidth);
  int bandwidth;
  CVector data;
  std::size_t index(int kappa, int l, int m) const;
  cplx at(int kappa, int l, int m) const { return data[index(kappa, l, m)]; }
};

/// zeta[kappa0, kappa1, m] stored in kappa0 blocks of (kappa1, m) order.
struct SphericalZeta {
  explicit SphericalZeta(int bandwidth);
  int bandwidth;
  CVector data;
  std::size_t index(int kappa0, int kappa1, int m) const;
  cplx at(int kappa0, int kappa1, int m) const { return data[index(kappa0, kappa1, m)]; }
};

/// eta on a 3-D frequency grid in chi order.
struct TrigVolume {
  int bandwidth = 1;
  GridShape shape;
  CVector eta;
  cplx at(int k0, int k1, int k2) const;
};

struct StageOptions {
  Precision precision = Precision::standard;
  Exec exec = Exec::parallel;
};

RadialBeta radial_subtransform(const BandlimitedCoefficients& coeffs, double rho,
                               const StageOptions& options = {});
BandlimitedCoefficients radial_subtransform_adjoint(const RadialBeta& beta, double rho,
                                                    const StageOptions& options = {});

SphericalZeta spherical_subtransform(const RadialBeta& beta, const StageOptions& options = {});
RadialBeta spherical_subtransform_adjoint(const SphericalZeta& zeta,
                                          const StageOptions& options = {});

/// Frequency-grid extents for the last stage.
///   support: 4B x 4B x 2B, the support of eta;
///   reduced: 4B x 2B x 2B, exact as well since |kappa1| < B;
///   cube:    4B x 4B x 4B.
enum class GridChoice { support, reduced, cube };
GridShape sgl_grid_shape(int bandwidth, GridChoice choice);

TrigVolume assemble_trig_volume(const SphericalZeta& zeta, const GridShape& shape);
SphericalZeta extract_trig_volume(const TrigVolume& volume);

enum class LastStage { nfft, ndft };

struct SglOptions {
  double sigma = 2.0;
  int q = 16;
  LastStage last_stage = LastStage::nfft;
  GridChoice grid = GridChoice::support;
  double rho = 0.0;  // <= 0 selects choose_rho(points)
  Precision precision = Precision::standard;
  Exec exec = Exec::parallel;
  WindowMode window = WindowMode::precomputed;
};

/// Precomputed fast transform for one bandwidth and point set.
class SglPlan {
 public:
  SglPlan(int bandwidth, SphericalPointSet points, const SglOptions& options = {});

  int bandwidth() const { return bandwidth_; }
  double rho() const { return rho_; }
  std::size_t point_count() const { return points_.size(); }
  std::size_t coefficient_count() const;
  const GridShape& grid() const { return grid_; }
  const SglOptions& options() const { return options_; }

  CVector forward(const BandlimitedCoefficients& coeffs) const;
  BandlimitedCoefficients adjoint(std::span<const cplx> values) const;

 private:
  int bandwidth_;
  SphericalPointSet points_;
  SglOptions options_;
  double rho_;
  GridShape grid_;
  TorusNodeSet nodes_;
  std::unique_ptr<NfftPlan> nfft_;
};

CVector nfsglft_forward(const BandlimitedCoefficients& coeffs, const SphericalPointSet& points,
                        const SglOptions& options = {});
BandlimitedCoefficients nfsglft_adjoint(std::span<const cplx> values,
                                        const SphericalPointSet& points, int bandwidth,
                                        const SglOptions& options = {});

/// Threshold Omega(rho) of the small-radius branch of the error certificate.
double omega_threshold(double rho);

/// Certificate B^{7/2} a exp(b (B+1/2)^{1-1/e} + rho^2/2 - q pi/2) l1, with
/// the hidden constant set to one. Good for trends, not absolute limits.
double nfsglft_error_bound(int bandwidth, double rho, int q, double l1_norm);

}  // namespace sglnufft
