#include <algorithm>
#include <numeric>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "sglnufft/index_maps.hpp"

using namespace sglnufft;

namespace {

std::vector<SglIndex> enumerate_nlm(int B) {
  std::vector<SglIndex> out;
  for (int n = 1; n <= B; ++n)
    for (int l = 0; l < n; ++l)
      for (int m = -l; m <= l; ++m) out.push_back({n, l, m});
  return out;
}

// Position of every element after a stable sort by `key`.
template <typename T, typename Key>
std::vector<std::size_t> sort_positions(const std::vector<T>& items, Key key) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(items[a]) < key(items[b]); });
  std::vector<std::size_t> pos(items.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
  return pos;
}

template <typename F>
bool is_bijection(std::size_t size, F f) {
  std::vector<char> hit(size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = f(i);
    if (j >= size || hit[j]) return false;
    hit[j] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("coefficient count") {
  CHECK(coefficient_count(1) == 1);
  CHECK(coefficient_count(4) == 30);
  CHECK(MuLayout(8).size == 204);
  CHECK_THROWS(coefficient_count(0));
}

TEST_CASE("mu to nlm examples") {
  CHECK(mu_to_nlm(0, 3) == SglIndex{1, 0, 0});
  CHECK(mu_to_nlm(2, 2) == SglIndex{2, 1, -1});
  CHECK(mu_to_nlm(4, 2) == SglIndex{2, 1, 1});
  CHECK(nlm_to_mu({1, 0, 0}) == 0);
  CHECK(nlm_to_mu({2, 1, -1}) == 2);
  CHECK(nlm_to_mu({3, 2, 2}) == 13);
  CHECK_THROWS(mu_to_nlm(5, 2));
}

TEST_CASE("mu ordering is lexicographic and round-trips") {
  for (int B = 1; B <= 64; ++B) {
    const auto all = enumerate_nlm(B);
    REQUIRE(all.size() == coefficient_count(B));
    bool ok = true;
    for (std::size_t mu = 0; mu < all.size(); ++mu) {
      const SglIndex idx = mu_to_nlm(mu, B);
      ok = ok && idx == all[mu] && nlm_to_mu(idx) == mu;
    }
    CHECK(ok);
  }
}

TEST_CASE("chi and k") {
  CHECK(chi_to_k(0, 3, 4) == FreqIndex3{-2, -2, -2});
  CHECK(k_to_chi({0, 0, 0}, 3, 4) == 42);
  for (std::size_t chi = 0; chi < 64; ++chi) CHECK(k_to_chi(chi_to_k(chi, 3, 4), 3, 4) == chi);
  GridShape s;
  s.dim = 3;
  s.n = {8, 4, 2};
  for (std::size_t chi = 0; chi < s.size(); ++chi) CHECK(k_to_chi(chi_to_k(chi, s), s) == chi);
  CHECK(chi_to_k(1, s) == FreqIndex3{-3, -2, -1});
  CHECK_THROWS(k_to_chi({2, 0, 0}, 3, 4));
  CHECK_THROWS(isotropic_shape(3, 5));
}

TEST_CASE("perm_S against a sort-based resort") {
  CHECK(perm_S(0, 5) == 0);
  for (int B = 1; B <= 8; ++B) {
    const auto all = enumerate_nlm(B);
    const auto pos =
        sort_positions(all, [](const SglIndex& i) { return std::make_tuple(i.l, i.m, i.n); });
    for (std::size_t mu = 0; mu < all.size(); ++mu) CHECK(perm_S(mu, B) == pos[mu]);
    // reading the (l, m, n) array at perm_S(mu) retrieves the entry stored at mu
    std::vector<std::size_t> resorted(all.size());
    for (std::size_t mu = 0; mu < all.size(); ++mu) resorted[perm_S(mu, B)] = mu;
    for (std::size_t mu = 0; mu < all.size(); ++mu) CHECK(resorted[perm_S(mu, B)] == mu);
  }
}

TEST_CASE("perm_U against a sort-based resort") {
  for (int B = 1; B <= 8; ++B) {
    struct Item {
      int l, m, kappa;
    };
    std::vector<Item> items(perm_U_size(B));
    for (int l = 0; l < B; ++l)
      for (int m = -l; m <= l; ++m)
        for (int ko = 0; ko < 4 * B; ++ko) items[psi_index(l, m, ko, B)] = {l, m, ko - 2 * B};
    const auto pos =
        sort_positions(items, [](const Item& i) { return std::make_tuple(i.kappa, i.m, i.l); });
    for (std::size_t psi = 0; psi < items.size(); ++psi) CHECK(perm_U(psi, B) == pos[psi]);
  }
}

TEST_CASE("perm_X against a sort-based resort") {
  for (int B = 1; B <= 8; ++B) {
    std::vector<std::pair<int, int>> items(perm_X_size(B));  // (kappa, m)
    for (int m = -B + 1; m < B; ++m)
      for (int k = -2 * B; k < 2 * B; ++k) items[iota_index(m, k, B)] = {k, m};
    const auto pos = sort_positions(items, [](const auto& i) { return i; });
    for (std::size_t iota = 0; iota < items.size(); ++iota) CHECK(perm_X(iota, B) == pos[iota]);
  }
}

TEST_CASE("permutations are bijections") {
  for (int B = 1; B <= 16; ++B) {
    CHECK(is_bijection(perm_S_size(B), [B](std::size_t i) { return perm_S(i, B); }));
    CHECK(is_bijection(perm_U_size(B), [B](std::size_t i) { return perm_U(i, B); }));
    CHECK(is_bijection(perm_X_size(B), [B](std::size_t i) { return perm_X(i, B); }));
  }
  CHECK_THROWS(perm_U(perm_U_size(3), 3));
  CHECK_THROWS(perm_X(perm_X_size(3), 3));
}
