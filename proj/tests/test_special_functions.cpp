#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "sglnufft/special_functions.hpp"

using namespace sglnufft;
using doctest::Approx;

TEST_CASE("laguerre small cases") {
  CHECK(laguerre(0, 0.5, 3.7) == 1.0);
  CHECK(laguerre(1, 1.5, 2.0) == Approx(0.5).epsilon(1e-15));
  const double v = laguerre(5, 0.5, 1.0);
  const double ref = static_cast<double>(oracle::laguerre(5, 0.5L, 1.0L));
  CHECK(v == Approx(ref).epsilon(1e-13));
  CHECK(std::abs(v) <= std::exp(log_binomial(5.5, 5)) * std::exp(0.5));
}

TEST_CASE("laguerre agrees with the explicit sum") {
  for (int k = 0; k <= 20; ++k) {
    for (double a : {0.5, 1.5, 3.5, 7.5}) {
      for (double x : {0.0, 0.3, 1.0, 2.5, 6.0}) {
        const double ref = static_cast<double>(oracle::laguerre(k, a, x));
        CHECK(laguerre(k, a, x) == Approx(ref).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("laguerre rejects bad input") {
  CHECK_THROWS(laguerre(-1, 0.5, 1.0));
  CHECK_THROWS(laguerre(2, 0.5, std::nan("")));
}

TEST_CASE("associated legendre closed forms") {
  CHECK(assoc_legendre(0, 0, 0.3) == 1.0);
  for (double x : {-0.9, -0.2, 0.0, 0.4, 1.0}) CHECK(assoc_legendre(1, 0, x) == Approx(x));
  CHECK(assoc_legendre(2, 1, 0.5) == Approx(-3.0 * 0.5 * std::sqrt(0.75)).epsilon(1e-14));
  CHECK(assoc_legendre(2, 2, 0.5) == Approx(3.0 * 0.75).epsilon(1e-14));
  CHECK(assoc_legendre(1, -1, 0.5) == Approx(0.5 * std::sqrt(0.75)).epsilon(1e-14));
  CHECK_THROWS(assoc_legendre(2, 3, 0.1));
  CHECK_THROWS(assoc_legendre(2, 1, 1.5));
}

TEST_CASE("associated legendre matches reference recursion for both signs of m") {
  for (int l = 0; l <= 40; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (double x : {-0.97, -0.5, 0.1, 0.66, 0.999}) {
        const double ref = static_cast<double>(oracle::legendre(l, m, x));
        const double got = assoc_legendre(l, m, x);
        CHECK(std::abs(got - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("chebyshev polynomials") {
  CHECK(chebyshev(0, 0.7) == 1.0);
  CHECK(chebyshev(1, 0.7) == 0.7);
  CHECK(chebyshev(2, 0.5) == Approx(-0.5));
  for (int k = 0; k <= 128; ++k) {
    for (double w : {0.1, 0.9, 1.7, 2.9}) {
      CHECK(std::abs(chebyshev(k, std::cos(w)) - std::cos(k * w)) <= 1e-12);
    }
  }
}

TEST_CASE("normalization constants") {
  CHECK(sgl_norm(1, 0) == Approx(2.0 / std::pow(M_PI, 0.25)).epsilon(1e-14));
  CHECK(sgl_norm(2, 1) == Approx(std::sqrt(2.0 / (3.0 * std::sqrt(M_PI) / 4.0))).epsilon(1e-14));
  for (int n = 1; n <= 256; ++n) {
    for (int l = 0; l < n; l += 17) {
      const double v = sgl_norm(n, l);
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
    }
  }
  CHECK(sph_norm(0, 0) == Approx(1.0 / (2.0 * std::sqrt(M_PI))));
  CHECK(sph_norm(1, 0) == Approx(std::sqrt(3.0 / (4.0 * M_PI))));
  // Q_{l,-m} / Q_{lm} = (l+m)!/(l-m)!
  CHECK(sph_norm(3, -2) / sph_norm(3, 2) == Approx(120.0 / 1.0).epsilon(1e-13));
}

TEST_CASE("radial part") {
  for (double r : {0.0, 0.5, 3.0}) CHECK(radial_part(1, 0, r) == 1.0);
  CHECK(radial_part(2, 0, 1.0) == Approx(0.5));
  CHECK(radial_part(2, 1, 2.0) == Approx(2.0));
}

TEST_CASE("spherical harmonics values") {
  CHECK(spherical_harmonic(0, 0, 1.0, 2.0).real() == Approx(1.0 / (2.0 * std::sqrt(M_PI))));
  const cplx y = spherical_harmonic(1, 0, 0.7, 4.0);
  CHECK(y.real() == Approx(std::sqrt(3.0 / (4.0 * M_PI)) * std::cos(0.7)));
  CHECK(std::abs(y.imag()) < 1e-15);
}

TEST_CASE("spherical harmonics are orthonormal under sphere quadrature") {
  std::vector<double> x, w;
  oracle::gauss_legendre(12, x, w);
  const int nphi = 16;
  for (int l1 = 0; l1 <= 4; ++l1) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      for (int l2 = 0; l2 <= 4; ++l2) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          cplx s = 0.0;
          for (std::size_t i = 0; i < x.size(); ++i) {
            const double th = std::acos(x[i]);
            for (int j = 0; j < nphi; ++j) {
              const double ph = 2.0 * M_PI * j / nphi;
              s += w[i] * (2.0 * M_PI / nphi) * spherical_harmonic(l1, m1, th, ph) *
                   std::conj(spherical_harmonic(l2, m2, th, ph));
            }
          }
          const double expect = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
          CHECK(std::abs(s - expect) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("sgl basis values") {
  const cplx h = sgl_basis_eval({1, 0, 0}, {2.0, 1.0, 3.0});
  CHECK(h.real() == Approx(std::pow(M_PI, -0.75)).epsilon(1e-14));
  const SphericalPoint p{1.3, 0.4, 2.2};
  const cplx h21 = sgl_basis_eval({2, 1, 0}, p);
  CHECK(h21.real() ==
        Approx(sgl_norm(2, 1) * p.r * std::sqrt(3.0 / (4.0 * M_PI)) * std::cos(p.theta)));
  for (int n = 1; n <= 6; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int m = -l; m <= l; ++m) {
        const cplx ref = oracle::basis(n, l, m, 1.7, 2.1, 5.0);
        CHECK(std::abs(sgl_basis_eval({n, l, m}, {1.7, 2.1, 5.0}) - ref) <= 1e-12);
      }
    }
  }
}

TEST_CASE("sgl basis is orthonormal with Gaussian weight") {
  // Product rule: Gauss-Legendre in cos(theta), trapezoid in phi, composite
  // Simpson in r on [0, 9] where the weight is below 1e-35.
  std::vector<double> x, w;
  oracle::gauss_legendre(10, x, w);
  const int nphi = 12;
  const int nr = 1800;
  const double rmax = 9.0;
  const double h = rmax / nr;
  std::vector<SglIndex> idx;
  for (int n = 1; n <= 3; ++n)
    for (int l = 0; l < n; ++l)
      for (int m = -l; m <= l; ++m) idx.push_back({n, l, m});
  std::vector<double> rw(nr + 1);
  for (int i = 0; i <= nr; ++i) {
    const double r = i * h;
    const double simpson = (i == 0 || i == nr) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    rw[i] = simpson * h / 3.0 * r * r * std::exp(-r * r);
  }
  std::vector<double> qw;
  std::vector<SphericalPoint> pts;
  for (int ir = 0; ir <= nr; ++ir) {
    for (std::size_t it = 0; it < x.size(); ++it) {
      for (int ip = 0; ip < nphi; ++ip) {
        pts.push_back({ir * h, std::acos(x[it]), 2.0 * M_PI * ip / nphi});
        qw.push_back(rw[ir] * w[it] * 2.0 * M_PI / nphi);
      }
    }
  }
  std::vector<std::vector<cplx>> vals;
  for (const auto& a : idx) {
    std::vector<cplx> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) v[i] = sgl_basis_eval(a, pts[i]);
    vals.push_back(std::move(v));
  }
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) s += qw[i] * vals[a][i] * std::conj(vals[b][i]);
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) <= 1e-8);
    }
  }
}

TEST_CASE("index and point validation") {
  CHECK_THROWS(validate(SglIndex{0, 0, 0}));
  CHECK_THROWS(validate(SglIndex{2, 2, 0}));
  CHECK_THROWS(validate(SglIndex{3, 1, 2}));
  CHECK_NOTHROW(validate(SglIndex{3, 2, -2}));
  CHECK_THROWS(validate(SphericalPoint{-1.0, 0.0, 0.0}));
  CHECK_THROWS(validate(SphericalPoint{1.0, 4.0, 0.0}));
  CHECK_THROWS(validate(SphericalPoint{1.0, 1.0, 2.0 * M_PI}));
}

TEST_CASE("laguerre bound") {
  for (int k = 0; k <= 64; ++k) {
    for (double a = 0.5; a <= 10.5; a += 1.0) {
      const double lb = log_binomial(k + a, k);
      for (double xv = 0.0; xv <= 50.0; xv += 0.5) {
        CHECK(std::log(std::abs(laguerre(k, a, xv)) + 1e-300) <= lb + xv / 2.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("normalized legendre bound") {
  for (int l = 0; l <= 64; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double f = 0.5 * (std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0));
      for (int i = 0; i <= 40; ++i) {
        CHECK(std::exp(f) * std::abs(assoc_legendre(l, m, -1.0 + i / 20.0)) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("legendre order-raising identity") {
  // P_lm / sqrt(1-x^2) = -(1/2m) [P_{l+1,m+1} + (l-m+1)(l-m+2) P_{l+1,m-1}]
  // Near a root of P_lm the two right-hand terms cancel to far below their own
  // size, so the relative error is taken against the largest term.
  for (int l = 1; l <= 32; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (m == 0) continue;
      for (double xv : {-0.95, -0.3, 0.2, 0.77}) {
        const double lhs = assoc_legendre(l, m, xv) / std::sqrt(1.0 - xv * xv);
        const double up = assoc_legendre(l + 1, m + 1, xv) / (2.0 * m);
        const double down =
            (l - m + 1.0) * (l - m + 2.0) * assoc_legendre(l + 1, m - 1, xv) / (2.0 * m);
        const double scale = std::max({std::abs(lhs), std::abs(up), std::abs(down)});
        CHECK(std::abs(lhs + up + down) <= 1e-9 * scale);
      }
    }
  }
}
