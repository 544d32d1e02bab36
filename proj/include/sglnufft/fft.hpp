#pragma once

// Thin wrapper over FFTW for in-place complex transforms on grids whose
// axis 0 varies fastest (the chi layout of the index maps).
//
// Convention: Direction::forward computes sum_l x_l e^{-2 pi i k l / N},
// Direction::backward the same with e^{+...}. Neither is normalized; callers
// divide by N where an inverse is meant.

#include <array>
#include <memory>

#include "sglnufft/common.hpp"

namespace sglnufft {

class FftPlan {
 public:
  enum class Direction { forward, backward };

  /// Plan for a rank-`rank` grid with per-axis sizes dims[0..rank-1], axis 0
  /// fastest in memory.
  FftPlan(int rank, std::array<int, 3> dims, Direction direction);
  FftPlan(int n, Direction direction) : FftPlan(1, {n, 1, 1}, direction) {}
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const { return size_; }

  /// In-place execution; safe to call concurrently on distinct buffers.
  void execute(cplx* data) const;

 private:
  void* plan_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace sglnufft
