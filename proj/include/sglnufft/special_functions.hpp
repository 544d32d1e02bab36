#pragma once

// Special functions behind the spherical Gauss-Laguerre (SGL) basis
//
//   H_nlm(r, theta, phi) = N_nl * R_nl(r) * Y_lm(theta, phi),
//   R_nl(r)  = L_{n-l-1}^{(l+1/2)}(r^2) * r^l,
//   N_nl     = sqrt(2 (n-l-1)! / Gamma(n + 1/2)),
//   Y_lm     = Q_lm * P_lm(cos theta) * exp(i m phi),
//   Q_lm     = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!).
//
// P_lm carries the Condon-Shortley phase (-1)^m (Rodrigues form). All
// factorial and Gamma ratios go through lgamma and are exponentiated last.

#include "sglnufft/common.hpp"

namespace sglnufft {

/// A point in spherical coordinates: r >= 0, theta in [0, pi], phi in [0, 2pi).
struct SphericalPoint {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Throws std::domain_error unless the point satisfies the coordinate ranges.
void validate(const SphericalPoint& p);

/// SGL multi-index with 1 <= n, 0 <= l < n, |m| <= l.
struct SglIndex {
  int n = 1;
  int l = 0;
  int m = 0;
  friend bool operator==(const SglIndex&, const SglIndex&) = default;
};

void validate(const SglIndex& idx);

/// Generalized Laguerre polynomial L_k^{(alpha)}(x) by upward recurrence.
double laguerre(int k, double alpha, double x);

/// Associated Legendre function P_lm(x), |m| <= l, |x| <= 1. Negative orders
/// use P_{l,-m} = (-1)^m (l-m)!/(l+m)! P_lm.
double assoc_legendre(int l, int m, double x);

/// Chebyshev polynomial of the first kind, T_k(x) = cos(k arccos x).
double chebyshev(int k, double x);

/// log of N_nl.
double log_sgl_norm(int n, int l);
double sgl_norm(int n, int l);

/// Spherical harmonic normalization Q_lm.
double sph_norm(int l, int m);

/// R_nl(r) = L_{n-l-1}^{(l+1/2)}(r^2) r^l.
double radial_part(int n, int l, double r);

/// Y_lm(theta, phi) = Q_lm P_lm(cos theta) e^{i m phi}.
cplx spherical_harmonic(int l, int m, double theta, double phi);

/// H_nlm evaluated at a point.
cplx sgl_basis_eval(const SglIndex& idx, const SphericalPoint& p);

/// log of the generalized binomial coefficient binom(k + alpha, k).
double log_binomial(double top, double k);

}  // namespace sglnufft
