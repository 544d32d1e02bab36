#pragma once

// Index bijections used throughout the transform. Nothing here materializes a
// matrix: the permutations of the factorization are plain index functions.
//
//   mu   <-> (n, l, m)      mu = n(n-1)(2n-1)/6 + l(l+1) + m
//   chi  <-> k in I^d_n     chi = sum_j (k_j + n_j/2) prod_{i<j} n_i
//   perm_S : mu  -> position of (n,l,m) in (l, m, n) order
//   perm_U : psi -> position of (l,m,kappa) in (kappa, m, l) order
//   perm_X : iota -> position of (m,kappa) in (kappa, m) order

#include <array>
#include <cstddef>

#include "sglnufft/special_functions.hpp"

namespace sglnufft {

/// Number of SGL coefficients with bandwidth B: B(B+1)(2B+1)/6.
std::size_t coefficient_count(int bandwidth);

/// Linear coefficient layout for one bandwidth.
struct MuLayout {
  explicit MuLayout(int bandwidth);
  int bandwidth;
  std::size_t size;
};

SglIndex mu_to_nlm(std::size_t mu, int bandwidth);
std::size_t nlm_to_mu(const SglIndex& idx);

/// Frequency multi-index; components beyond the dimension are zero.
using FreqIndex3 = std::array<int, 3>;

/// Per-axis even degrees of a (possibly anisotropic) frequency grid I^d_n.
struct GridShape {
  int dim = 3;
  std::array<int, 3> n{1, 1, 1};

  std::size_t size() const;
  bool contains(const FreqIndex3& k) const;
};

GridShape isotropic_shape(int dim, int n);

FreqIndex3 chi_to_k(std::size_t chi, const GridShape& shape);
std::size_t k_to_chi(const FreqIndex3& k, const GridShape& shape);
inline FreqIndex3 chi_to_k(std::size_t chi, int dim, int n) {
  return chi_to_k(chi, isotropic_shape(dim, n));
}
inline std::size_t k_to_chi(const FreqIndex3& k, int dim, int n) {
  return k_to_chi(k, isotropic_shape(dim, n));
}

/// Domain sizes of the three permutations.
std::size_t perm_S_size(int bandwidth);  // B(B+1)(2B+1)/6
std::size_t perm_U_size(int bandwidth);  // 4B^3
std::size_t perm_X_size(int bandwidth);  // 4B(2B-1)

std::size_t perm_S(std::size_t mu, int bandwidth);
std::size_t perm_U(std::size_t psi, int bandwidth);
std::size_t perm_X(std::size_t iota, int bandwidth);

/// Input orderings of perm_U and perm_X, exposed so callers can build psi and
/// iota from their components. kappa_offset runs over 0..4B-1 (kappa + 2B).
std::size_t psi_index(int l, int m, int kappa_offset, int bandwidth);
std::size_t iota_index(int m, int kappa, int bandwidth);

}  // namespace sglnufft
