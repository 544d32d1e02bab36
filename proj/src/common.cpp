#include "sglnufft/common.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace sglnufft {

namespace {

int env_thread_cap() {
  const char* raw = std::getenv("SGLNUFFT_THREADS");
  if (raw == nullptr) return 0;
  try {
    const int cap = std::stoi(raw);
    return cap > 0 ? cap : 0;
  } catch (...) {
    return 0;
  }
}

}  // namespace

int worker_count() {
  const int available = omp_get_max_threads();
  const int cap = env_thread_cap();
  return cap > 0 ? std::min(cap, available) : available;
}

void configure_threads_from_env() {
  const int cap = env_thread_cap();
  if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_num_procs()));
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y, Precision precision) {
  if (precision == Precision::compensated) {
    CompensatedSum<double> re;
    CompensatedSum<double> im;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const cplx p = x[i] * std::conj(y[i]);
      re.add(p.real());
      im.add(p.imag());
    }
    return {re.value(), im.value()};
  }
  cplx acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

double norm2(std::span<const cplx> x, Precision precision) {
  if (precision == Precision::compensated) {
    CompensatedSum<double> acc;
    for (const cplx& v : x) acc.add(std::norm(v));
    return std::sqrt(acc.value());
  }
  double acc = 0.0;
  for (const cplx& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

double norm1(std::span<const cplx> x) {
  double acc = 0.0;
  for (const cplx& v : x) acc += std::abs(v);
  return acc;
}

double max_abs(std::span<const cplx> x) {
  double m = 0.0;
  for (const cplx& v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace sglnufft
