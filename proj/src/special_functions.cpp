#include "sglnufft/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sglnufft {

void validate(const SphericalPoint& p) {
  if (!std::isfinite(p.r) || !std::isfinite(p.theta) || !std::isfinite(p.phi)) {
    throw std::domain_error("spherical point has non-finite coordinate");
  }
  if (p.r < 0.0) throw std::domain_error("spherical point radius must be >= 0");
  if (p.theta < 0.0 || p.theta > kPi) {
    throw std::domain_error("polar angle must lie in [0, pi]");
  }
  if (p.phi < 0.0 || p.phi >= kTwoPi) {
    throw std::domain_error("azimuthal angle must lie in [0, 2pi)");
  }
}

void validate(const SglIndex& idx) {
  if (idx.n < 1 || idx.l < 0 || idx.l >= idx.n || std::abs(idx.m) > idx.l) {
    throw std::out_of_range("invalid SGL index (n=" + std::to_string(idx.n) +
                            ", l=" + std::to_string(idx.l) +
                            ", m=" + std::to_string(idx.m) + ")");
  }
}

double laguerre(int k, double alpha, double x) {
  if (k < 0) throw std::out_of_range("laguerre: degree must be >= 0");
  if (!(alpha > -1.0)) throw std::domain_error("laguerre: alpha must exceed -1");
  if (!std::isfinite(x)) throw std::domain_error("laguerre: non-finite argument");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double assoc_legendre(int l, int m, double x) {
  if (l < 0 || std::abs(m) > l) {
    throw std::out_of_range("assoc_legendre: need |m| <= l");
  }
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("assoc_legendre: |x| must be <= 1");
  const int am = std::abs(m);
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  // P_{|m|,|m|} = (-1)^|m| (2|m|-1)!! s^|m|
  double pmm = 1.0;
  for (int i = 1; i <= am; ++i) pmm *= -(2.0 * i - 1.0) * s;
  double value = pmm;
  if (l > am) {
    double prev = pmm;
    double cur = (2.0 * am + 1.0) * x * pmm;
    for (int ll = am + 1; ll < l; ++ll) {
      const double next = ((2.0 * ll + 1.0) * x * cur - (ll + am) * prev) / (ll + 1 - am);
      prev = cur;
      cur = next;
    }
    value = cur;
  }
  if (m < 0) {
    const double ratio = std::exp(std::lgamma(l - am + 1.0) - std::lgamma(l + am + 1.0));
    value *= (am % 2 == 0 ? 1.0 : -1.0) * ratio;
  }
  return value;
}

double chebyshev(int k, double x) {
  if (k < 0) throw std::out_of_range("chebyshev: degree must be >= 0");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_sgl_norm(int n, int l) {
  validate(SglIndex{n, l, 0});
  return 0.5 * (std::log(2.0) + std::lgamma(n - l) - std::lgamma(n + 0.5));
}

double sgl_norm(int n, int l) { return std::exp(log_sgl_norm(n, l)); }

double sph_norm(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw std::out_of_range("sph_norm: need |m| <= l");
  const double log_ratio = std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0);
  return std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * std::exp(log_ratio));
}

double radial_part(int n, int l, double r) {
  validate(SglIndex{n, l, 0});
  return laguerre(n - l - 1, l + 0.5, r * r) * std::pow(r, l);
}

cplx spherical_harmonic(int l, int m, double theta, double phi) {
  const double polar = sph_norm(l, m) * assoc_legendre(l, m, std::cos(theta));
  return polar * cplx(std::cos(m * phi), std::sin(m * phi));
}

cplx sgl_basis_eval(const SglIndex& idx, const SphericalPoint& p) {
  validate(idx);
  return sgl_norm(idx.n, idx.l) * radial_part(idx.n, idx.l, p.r) *
         spherical_harmonic(idx.l, idx.m, p.theta, p.phi);
}

double log_binomial(double top, double k) {
  return std::lgamma(top + 1.0) - std::lgamma(k + 1.0) - std::lgamma(top - k + 1.0);
}

}  // namespace sglnufft
