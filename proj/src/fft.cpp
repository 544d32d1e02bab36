#include "sglnufft/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <utility>

namespace sglnufft {

namespace {
// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftPlan::FftPlan(int rank, std::array<int, 3> dims, Direction direction) {
  if (rank < 1 || rank > 3) throw std::invalid_argument("FftPlan: rank must be 1..3");
  int n[3];
  size_ = 1;
  for (int j = 0; j < rank; ++j) {
    if (dims[j] < 1) throw std::invalid_argument("FftPlan: sizes must be positive");
    n[rank - 1 - j] = dims[j];  // FFTW is row-major: last index fastest
    size_ *= static_cast<std::size_t>(dims[j]);
  }
  const int sign = direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto* buf = fftw_alloc_complex(size_);
  plan_ = fftw_plan_dft(rank, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (plan_ == nullptr) throw std::runtime_error("FftPlan: FFTW planning failed");
}

FftPlan::~FftPlan() {
  if (plan_ != nullptr) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

FftPlan::FftPlan(FftPlan&& other) noexcept
    : plan_(std::exchange(other.plan_, nullptr)), size_(other.size_) {}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  std::swap(plan_, other.plan_);
  std::swap(size_, other.size_);
  return *this;
}

void FftPlan::execute(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_), p, p);
}

}  // namespace sglnufft
