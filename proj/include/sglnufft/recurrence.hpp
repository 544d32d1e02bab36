#pragma once

// Clenshaw-Smith summation for families with
//
//   f_{k+1}(x) = alpha_k(x) f_k(x) + beta_k(x) f_{k-1}(x),   k >= 1,
//
// with f_0 and f_1 supplied directly. clenshaw_eval computes
// S_j = sum_k gamma_k f_k(x_j); clenshaw_adjoint is its literal transpose,
// sum_j d_j f_k(x_j) for every k. Both keep O(m) state and loop over k
// outside and points inside.
//
// A recurrence is any type with alpha(k, x), beta(k, x), f0(x), f1(x).
// The Acc parameter selects the accumulator (double or long double).

#include <functional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "sglnufft/common.hpp"

namespace sglnufft {

/// Type-erased recurrence, handy for tests and one-off families.
struct ThreeTermRecurrence {
  std::function<double(int, double)> alpha;
  std::function<double(int, double)> beta;
  std::function<double(double)> f0;
  std::function<double(double)> f1;
};

/// T_k: f_{k+1} = 2x f_k - f_{k-1}.
struct ChebyshevRecurrence {
  double alpha(int, double x) const { return 2.0 * x; }
  double beta(int, double) const { return -1.0; }
  double f0(double) const { return 1.0; }
  double f1(double x) const { return x; }
};

/// f_k = w(x) P_{|m|+k, m}(x). With weight_odd set, w(x) = 1/sqrt(1-x^2),
/// otherwise 1. Unnormalized, so seeds overflow once |m| passes ~150.
class LegendreRecurrence {
 public:
  explicit LegendreRecurrence(int m, bool weight_odd = false);
  int order() const { return m_; }
  double alpha(int k, double x) const {
    const int l = am_ + k;
    return (2.0 * l + 1.0) * x / (l + 1.0 - m_);
  }
  double beta(int k, double) const {
    const int l = am_ + k;
    return -(l + static_cast<double>(m_)) / (l + 1.0 - m_);
  }
  double f0(double x) const;
  double f1(double x) const { return (2.0 * am_ + 1.0) * x / (am_ + 1.0 - m_) * f0(x); }

 private:
  int m_;
  int am_;
  bool weight_odd_;
  double seed_log_;  // log of (2|m|-1)!! or 1/(2^|m| |m|!)
  double seed_sign_;
};

/// Generalized Laguerre L_k^{(a)}(x).
struct LaguerreRecurrence {
  double a;
  double alpha(int k, double x) const { return (2.0 * k + 1.0 + a - x) / (k + 1.0); }
  double beta(int k, double) const { return -(k + a) / (k + 1.0); }
  double f0(double) const { return 1.0; }
  double f1(double x) const { return 1.0 + a - x; }
};

/// f_k(x) = N_{k+l+1,l} L_k^{(l+1/2)}(x); the radial factor r^l stays with
/// the caller.
class NormalizedLaguerreRecurrence {
 public:
  /// Valid for degrees k <= max_degree.
  NormalizedLaguerreRecurrence(int l, int max_degree);
  double alpha(int k, double x) const {
    return ratio1_[k] * (2.0 * k + 1.0 + a_ - x) / (k + 1.0);
  }
  double beta(int k, double) const { return -ratio2_[k] * (k + a_) / (k + 1.0); }
  double f0(double) const { return c0_; }
  double f1(double x) const { return c1_ * (1.0 + a_ - x); }

 private:
  double a_;
  double c0_;
  double c1_;
  std::vector<double> ratio1_;  // c_{k+1}/c_k
  std::vector<double> ratio2_;  // c_{k+1}/c_{k-1}
};

template <typename Acc, typename Rec, typename Coef>
void clenshaw_eval_into(const Rec& rec, std::span<const Coef> gamma, std::span<const double> xs,
                        std::span<Coef> out) {
  const auto n = static_cast<int>(gamma.size());
  if (n < 1) throw std::invalid_argument("clenshaw_eval: empty coefficient vector");
  if (out.size() != xs.size()) throw std::invalid_argument("clenshaw_eval: output length");
  using AccC = std::conditional_t<std::is_same_v<Coef, double>, Acc, std::complex<Acc>>;
  const std::size_t m = xs.size();
  std::vector<AccC> b1(m, AccC{}), b2(m, AccC{});  // b_{k+1}, b_{k+2}
  for (int k = n - 1; k >= 1; --k) {
    const AccC g = static_cast<AccC>(gamma[k]);
    for (std::size_t j = 0; j < m; ++j) {
      const Acc a = rec.alpha(k, xs[j]);
      const Acc b = k + 1 < n ? static_cast<Acc>(rec.beta(k + 1, xs[j])) : Acc(0);
      const AccC bk = g + a * b1[j] + b * b2[j];
      b2[j] = b1[j];
      b1[j] = bk;
    }
  }
  const AccC g0 = static_cast<AccC>(gamma[0]);
  for (std::size_t j = 0; j < m; ++j) {
    const Acc f0 = rec.f0(xs[j]);
    AccC s = g0 * f0;
    if (n > 1) {
      s += b1[j] * static_cast<Acc>(rec.f1(xs[j]));
      if (n > 2) s += static_cast<Acc>(rec.beta(1, xs[j])) * f0 * b2[j];
    }
    out[j] = static_cast<Coef>(s);
  }
}

template <typename Acc, typename Rec, typename Coef>
void clenshaw_adjoint_into(const Rec& rec, std::span<const Coef> data, std::span<const double> xs,
                           std::span<Coef> out) {
  const auto n = static_cast<int>(out.size());
  if (n < 1) throw std::invalid_argument("clenshaw_adjoint: output length must be >= 1");
  if (data.size() != xs.size()) throw std::invalid_argument("clenshaw_adjoint: data length");
  using AccC = std::conditional_t<std::is_same_v<Coef, double>, Acc, std::complex<Acc>>;
  const std::size_t m = xs.size();
  // Transposed backward sweep: p holds bbar_k, q the partial bbar_{k+1}.
  std::vector<AccC> p(m), q(m);
  AccC s0{};
  for (std::size_t j = 0; j < m; ++j) {
    const AccC d = static_cast<AccC>(data[j]);
    const Acc f0 = rec.f0(xs[j]);
    s0 += f0 * d;
    if (n > 1) {
      p[j] = static_cast<Acc>(rec.f1(xs[j])) * d;
      q[j] = n > 2 ? static_cast<Acc>(rec.beta(1, xs[j])) * f0 * d : AccC{};
    }
  }
  out[0] = static_cast<Coef>(s0);
  for (int k = 1; k < n; ++k) {
    AccC s{};
    for (std::size_t j = 0; j < m; ++j) s += p[j];
    out[k] = static_cast<Coef>(s);
    if (k + 1 >= n) break;
    for (std::size_t j = 0; j < m; ++j) {
      const Acc a = rec.alpha(k, xs[j]);
      const Acc b = k + 2 < n ? static_cast<Acc>(rec.beta(k + 1, xs[j])) : Acc(0);
      const AccC pk = p[j];
      p[j] = q[j] + a * pk;
      q[j] = b * pk;
    }
  }
}

template <typename Rec, typename Coef>
std::vector<Coef> clenshaw_eval(const Rec& rec, std::span<const Coef> gamma,
                                std::span<const double> xs,
                                Precision precision = Precision::standard) {
  std::vector<Coef> out(xs.size());
  if (precision == Precision::compensated) {
    clenshaw_eval_into<long double>(rec, gamma, xs, std::span<Coef>(out));
  } else {
    clenshaw_eval_into<double>(rec, gamma, xs, std::span<Coef>(out));
  }
  return out;
}

template <typename Rec, typename Coef>
std::vector<Coef> clenshaw_adjoint(const Rec& rec, std::span<const Coef> data,
                                   std::span<const double> xs, int n,
                                   Precision precision = Precision::standard) {
  if (n < 1) throw std::invalid_argument("clenshaw_adjoint: output length must be >= 1");
  std::vector<Coef> out(static_cast<std::size_t>(n));
  if (precision == Precision::compensated) {
    clenshaw_adjoint_into<long double>(rec, data, xs, std::span<Coef>(out));
  } else {
    clenshaw_adjoint_into<double>(rec, data, xs, std::span<Coef>(out));
  }
  return out;
}

/// Node cosines cos((2j+1) pi / 4n), j = 0..2n-1, of the Legendre matrices.
std::vector<double> legendre_nodes(int n);

/// coeffs_l = sum_j P_lm(cos t_j) data_j for l = |m|..n-1.
CVector dlt(int m, int n, std::span<const cplx> data, Precision precision = Precision::standard);

/// data_j = w_j sum_l coeffs_l P_lm(cos t_j); w_j = 1/sin t_j when weight_odd.
CVector dlt_adjoint(int m, int n, std::span<const cplx> coeffs, bool weight_odd = false,
                    Precision precision = Precision::standard);

/// Transpose of dlt_adjoint including the odd weighting (used by adjoints).
CVector dlt_weighted(int m, int n, std::span<const cplx> data, bool weight_odd,
                     Precision precision = Precision::standard);

}  // namespace sglnufft
