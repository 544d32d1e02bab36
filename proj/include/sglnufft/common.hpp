#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace sglnufft {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path the tests compare the OpenMP path against.
enum class Exec { serial, parallel };

/// Accumulation precision. `compensated` switches recurrence accumulators to
/// long double and CG inner products to Neumaier summation.
enum class Precision { standard, compensated };

/// Number of OpenMP workers honoured by the parallel kernels. Capped by the
/// SGLNUFFT_THREADS environment variable when it is set.
int worker_count();

/// Applies the SGLNUFFT_THREADS cap to the OpenMP runtime.
void configure_threads_from_env();

/// Neumaier-compensated running sum.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) {
    const T t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      carry_ += (sum_ - t) + value;
    } else {
      carry_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

/// Hermitian inner product <x, y> = sum x_i conj(y_i).
cplx inner(std::span<const cplx> x, std::span<const cplx> y,
           Precision precision = Precision::standard);
double norm2(std::span<const cplx> x, Precision precision = Precision::standard);
double norm1(std::span<const cplx> x);
double max_abs(std::span<const cplx> x);

}  // namespace sglnufft
