// Serial against OpenMP timings for the main kernels, plus naive against
// fast SGL evaluation. Usage: bench_kernels [B] [M] [reps]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "sglnufft/experiments.hpp"
#include "sglnufft/nfft.hpp"
#include "sglnufft/sgl_transform.hpp"

using namespace sglnufft;

static double median_seconds(int reps, const std::function<void()>& fn) {
  std::vector<double> t;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

static void row(const char* name, double serial, double parallel) {
  std::printf("%-24s %12.4e %12.4e %8.2fx\n", name, serial, parallel, serial / parallel);
}

int main(int argc, char** argv) {
  configure_threads_from_env();
  const int B = argc > 1 ? std::atoi(argv[1]) : 16;
  const std::size_t M = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 10000;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
  std::printf("B=%d M=%zu workers=%d reps=%d\n", B, M, worker_count(), reps);
  std::printf("%-24s %12s %12s %9s\n", "kernel", "serial[s]", "parallel[s]", "speedup");

  const auto coeffs = gen_coeffs(B, 1);
  const auto points = gen_points_ball(M, 5.0, 2);

  {
    std::vector<std::array<double, 3>> raw(M);
    Rng rng(3);
    for (auto& x : raw) x = {kTwoPi * rng.uniform(), kTwoPi * rng.uniform(), kTwoPi * rng.uniform()};
    const TorusNodeSet nodes(3, raw);
    const auto shape = isotropic_shape(3, 4 * B);
    CVector w(shape.size(), cplx(1.0, 0.5));
    NfftOptions so, po;
    so.q = po.q = 8;
    so.exec = Exec::serial;
    po.exec = Exec::parallel;
    const NfftPlan ps(shape, nodes, so), pp(shape, nodes, po);
    row("nfft execute", median_seconds(reps, [&] { (void)ps.execute(w); }),
        median_seconds(reps, [&] { (void)pp.execute(w); }));
    CVector v(M, cplx(1.0, -0.5));
    row("nfft adjoint", median_seconds(reps, [&] { (void)ps.adjoint(v); }),
        median_seconds(reps, [&] { (void)pp.adjoint(v); }));
  }

  SglOptions so, po;
  so.exec = Exec::serial;
  po.exec = Exec::parallel;
  const SglPlan ss(B, points, so), sp(B, points, po);
  row("sgl forward", median_seconds(reps, [&] { (void)ss.forward(coeffs); }),
      median_seconds(reps, [&] { (void)sp.forward(coeffs); }));
  const CVector values = sp.forward(coeffs);
  row("sgl adjoint", median_seconds(reps, [&] { (void)ss.adjoint(values); }),
      median_seconds(reps, [&] { (void)sp.adjoint(values); }));
  row("naive forward",
      median_seconds(reps, [&] { (void)ndsglft_naive(coeffs, points, Exec::serial); }),
      median_seconds(reps, [&] { (void)ndsglft_naive(coeffs, points, Exec::parallel); }));

  const double naive = median_seconds(reps, [&] { (void)ndsglft_naive(coeffs, points); });
  const double fast = median_seconds(reps, [&] { (void)nfsglft_forward(coeffs, points, po); });
  std::printf("\nnaive %.4e s, fast incl. planning %.4e s, ratio %.2f\n", naive, fast,
              naive / fast);
  return 0;
}
