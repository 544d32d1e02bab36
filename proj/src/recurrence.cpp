#include "sglnufft/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sglnufft {

LegendreRecurrence::LegendreRecurrence(int m, bool weight_odd)
    : m_(m), am_(std::abs(m)), weight_odd_(weight_odd) {
  // P_{|m|,|m|} = (-1)^|m| (2|m|-1)!! s^|m|,  P_{|m|,-|m|} = s^|m| / (2^|m| |m|!).
  double log_c = 0.0;
  if (m >= 0) {
    for (int i = 1; i <= am_; ++i) log_c += std::log(2.0 * i - 1.0);
    seed_sign_ = am_ % 2 == 0 ? 1.0 : -1.0;
  } else {
    log_c = -am_ * std::log(2.0) - std::lgamma(am_ + 1.0);
    seed_sign_ = 1.0;
  }
  seed_log_ = log_c;
}

double LegendreRecurrence::f0(double x) const {
  const double s2 = (1.0 - x) * (1.0 + x);
  int power = am_;
  if (weight_odd_) --power;  // fused 1/sin weighting
  if (power == 0) return seed_sign_ * std::exp(seed_log_);
  if (s2 <= 0.0) {
    if (power > 0) return 0.0;
    throw std::domain_error("LegendreRecurrence: odd weighting at the pole");
  }
  return seed_sign_ * std::exp(seed_log_ + 0.5 * power * std::log(s2));
}

NormalizedLaguerreRecurrence::NormalizedLaguerreRecurrence(int l, int max_degree)
    : a_(l + 0.5) {
  if (l < 0) throw std::out_of_range("NormalizedLaguerreRecurrence: l must be >= 0");
  // c_k = sqrt(2 k! / Gamma(k + l + 3/2))
  c0_ = std::exp(0.5 * (std::log(2.0) - std::lgamma(a_ + 1.0)));
  c1_ = c0_ * std::sqrt(1.0 / (a_ + 1.0));
  const int n = std::max(max_degree, 1);
  ratio1_.resize(n + 1);
  ratio2_.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    ratio1_[k] = std::sqrt((k + 1.0) / (k + a_ + 1.0));
    ratio2_[k] = k == 0 ? 0.0 : std::sqrt((k + 1.0) * k / ((k + a_ + 1.0) * (k + a_)));
  }
}

std::vector<double> legendre_nodes(int n) {
  if (n < 1) throw std::invalid_argument("legendre_nodes: n must be >= 1");
  std::vector<double> xs(2 * static_cast<std::size_t>(n));
  for (int j = 0; j < 2 * n; ++j) xs[j] = std::cos((2.0 * j + 1.0) * kPi / (4.0 * n));
  return xs;
}

namespace {

void check_order(int m, int n) {
  if (n < 1 || std::abs(m) >= n) {
    throw std::out_of_range("DLT requires |m| < n (m=" + std::to_string(m) +
                            ", n=" + std::to_string(n) + ")");
  }
}

}  // namespace

CVector dlt_weighted(int m, int n, std::span<const cplx> data, bool weight_odd,
                     Precision precision) {
  check_order(m, n);
  if (data.size() != 2 * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("dlt: data must have length 2n");
  }
  const auto xs = legendre_nodes(n);
  const LegendreRecurrence rec(m, weight_odd);
  return clenshaw_adjoint(rec, data, std::span<const double>(xs), n - std::abs(m), precision);
}

CVector dlt(int m, int n, std::span<const cplx> data, Precision precision) {
  return dlt_weighted(m, n, data, false, precision);
}

CVector dlt_adjoint(int m, int n, std::span<const cplx> coeffs, bool weight_odd,
                    Precision precision) {
  check_order(m, n);
  if (coeffs.size() != static_cast<std::size_t>(n - std::abs(m))) {
    throw std::invalid_argument("dlt_adjoint: coeffs must have length n - |m|");
  }
  const auto xs = legendre_nodes(n);
  const LegendreRecurrence rec(m, weight_odd);
  return clenshaw_eval(rec, coeffs, std::span<const double>(xs), precision);
}

}  // namespace sglnufft
