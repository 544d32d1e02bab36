#include "sglnufft/index_maps.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sglnufft {

namespace {

using i64 = std::int64_t;

void check_bandwidth(int bandwidth) {
  if (bandwidth < 1) throw std::invalid_argument("bandwidth must be >= 1");
}

// First mu of the block with principal order n.
i64 block_start(i64 n) { return n * (n - 1) * (2 * n - 1) / 6; }

int sgn(int v) { return (v > 0) - (v < 0); }

}  // namespace

std::size_t coefficient_count(int bandwidth) {
  check_bandwidth(bandwidth);
  const i64 b = bandwidth;
  return static_cast<std::size_t>(b * (b + 1) * (2 * b + 1) / 6);
}

MuLayout::MuLayout(int bandwidth_)
    : bandwidth(bandwidth_), size(coefficient_count(bandwidth_)) {}

SglIndex mu_to_nlm(std::size_t mu, int bandwidth) {
  if (mu >= coefficient_count(bandwidth)) {
    throw std::out_of_range("mu_to_nlm: index " + std::to_string(mu) + " out of range");
  }
  const i64 u = static_cast<i64>(mu);
  // Closed form n(mu) = floor(cosh(arcosh(36 sqrt(3) mu) / 3) / sqrt(3) + 1/2);
  // round-off near block boundaries is repaired by probing n +- 1.
  i64 n = 1;
  const double arg = 36.0 * std::sqrt(3.0) * static_cast<double>(u);
  if (arg >= 1.0) {
    n = static_cast<i64>(std::floor(std::cosh(std::acosh(arg) / 3.0) / std::sqrt(3.0) + 0.5));
  }
  n = std::max<i64>(n, 1);
  while (block_start(n) > u) --n;
  while (block_start(n + 1) <= u) ++n;

  const i64 rest = u - block_start(n);
  i64 l = static_cast<i64>(std::floor(std::sqrt(static_cast<double>(rest))));
  while (l * l > rest) --l;
  while ((l + 1) * (l + 1) <= rest) ++l;
  const i64 m = rest - l * (l + 1);
  return SglIndex{static_cast<int>(n), static_cast<int>(l), static_cast<int>(m)};
}

std::size_t nlm_to_mu(const SglIndex& idx) {
  validate(idx);
  const i64 n = idx.n;
  const i64 l = idx.l;
  return static_cast<std::size_t>(block_start(n) + l * (l + 1) + idx.m);
}

std::size_t GridShape::size() const {
  std::size_t total = 1;
  for (int j = 0; j < dim; ++j) total *= static_cast<std::size_t>(n[j]);
  return total;
}

bool GridShape::contains(const FreqIndex3& k) const {
  for (int j = 0; j < dim; ++j) {
    if (k[j] < -n[j] / 2 || k[j] >= n[j] / 2) return false;
  }
  for (int j = dim; j < 3; ++j) {
    if (k[j] != 0) return false;
  }
  return true;
}

GridShape isotropic_shape(int dim, int n) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("grid degree must be even and >= 2");
  GridShape shape;
  shape.dim = dim;
  shape.n = {1, 1, 1};
  for (int j = 0; j < dim; ++j) shape.n[j] = n;
  return shape;
}

FreqIndex3 chi_to_k(std::size_t chi, const GridShape& shape) {
  if (chi >= shape.size()) throw std::out_of_range("chi_to_k: index out of range");
  FreqIndex3 k{0, 0, 0};
  std::size_t rest = chi;
  for (int j = 0; j < shape.dim; ++j) {
    const auto nj = static_cast<std::size_t>(shape.n[j]);
    k[j] = static_cast<int>(rest % nj) - shape.n[j] / 2;
    rest /= nj;
  }
  return k;
}

std::size_t k_to_chi(const FreqIndex3& k, const GridShape& shape) {
  if (!shape.contains(k)) throw std::out_of_range("k_to_chi: frequency outside grid");
  std::size_t chi = 0;
  std::size_t stride = 1;
  for (int j = 0; j < shape.dim; ++j) {
    chi += static_cast<std::size_t>(k[j] + shape.n[j] / 2) * stride;
    stride *= static_cast<std::size_t>(shape.n[j]);
  }
  return chi;
}

std::size_t perm_S_size(int bandwidth) { return coefficient_count(bandwidth); }

std::size_t perm_U_size(int bandwidth) {
  check_bandwidth(bandwidth);
  const auto b = static_cast<std::size_t>(bandwidth);
  return 4 * b * b * b;
}

std::size_t perm_X_size(int bandwidth) {
  check_bandwidth(bandwidth);
  const auto b = static_cast<std::size_t>(bandwidth);
  return 4 * b * (2 * b - 1);
}

std::size_t perm_S(std::size_t mu, int bandwidth) {
  const SglIndex idx = mu_to_nlm(mu, bandwidth);
  const i64 b = bandwidth;
  const i64 n = idx.n;
  const i64 l = idx.l;
  const i64 m = idx.m;
  // n + (B + ((2B-1)/2 - (2l-1)/3)(l-1) - 1) l + (B-l)(l+m) - 1, expanded so
  // every division is exact.
  const i64 value = n + b * l * l - l * (l - 1) / 2 - l * (l - 1) * (2 * l - 1) / 3 - l +
                    (b - l) * (l + m) - 1;
  return static_cast<std::size_t>(value);
}

std::size_t perm_U(std::size_t psi, int bandwidth) {
  if (psi >= perm_U_size(bandwidth)) throw std::out_of_range("perm_U: index out of range");
  const i64 b = bandwidth;
  const i64 p = static_cast<i64>(psi);
  const i64 kappa = p % (4 * b);
  const i64 lm = (p - kappa) / (4 * b);
  i64 l = static_cast<i64>(std::floor(std::sqrt(static_cast<double>(lm))));
  while (l * l > lm) --l;
  while ((l + 1) * (l + 1) <= lm) ++l;
  const i64 m = lm - l * (l + 1);
  const i64 s = sgn(static_cast<int>(m));
  // B^2 kappa + (B^2 - B - m^2 sgn m)/2 + (B - sgn(m)/2) m + l
  const i64 twice = b * b - b - m * m * s + 2 * b * m - s * m;
  return static_cast<std::size_t>(b * b * kappa + twice / 2 + l);
}

std::size_t perm_X(std::size_t iota, int bandwidth) {
  if (iota >= perm_X_size(bandwidth)) throw std::out_of_range("perm_X: index out of range");
  const i64 b = bandwidth;
  const i64 i = static_cast<i64>(iota);
  const i64 kappa = i % (4 * b) - 2 * b;
  const i64 m = (i - kappa - 2 * b) / (4 * b) - b + 1;
  return static_cast<std::size_t>(b + (2 * b + kappa) * (2 * b - 1) + m - 1);
}

std::size_t psi_index(int l, int m, int kappa_offset, int bandwidth) {
  const i64 b = bandwidth;
  return static_cast<std::size_t>((static_cast<i64>(l) * (l + 1) + m) * 4 * b + kappa_offset);
}

std::size_t iota_index(int m, int kappa, int bandwidth) {
  const i64 b = bandwidth;
  return static_cast<std::size_t>((m + b - 1) * 4 * b + kappa + 2 * b);
}

}  // namespace sglnufft
