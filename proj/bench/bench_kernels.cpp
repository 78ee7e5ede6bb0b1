// Serial reference versus OpenMP kernels. Reports wall time and checks that
// the two paths return the same numbers.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "dyadic/global_verify.hpp"
#include "dyadic/oracle.hpp"

using namespace dyadic;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const int threads = omp_get_max_threads();
  std::printf("threads available: %d\n", threads);

  const OrbitSpace space(enumerate_ramified(BaseField::q2()).back());
  const DFamily fam = DFamily::ell1(1);
  MeasureEstimate serial{}, parallel{};
  const double ts = seconds([&] { serial = measure_montecarlo_serial(space, fam, 2000000, 7); });
  const double tp = seconds([&] { parallel = measure_montecarlo(space, fam, 2000000, 7); });
  std::printf("montecarlo 2e6   serial %.3f s  omp %.3f s  speedup %.2f  equal=%d\n", ts, tp, ts / tp,
              serial.estimate == parallel.estimate);

  MeanValueReport one{}, many{};
  omp_set_num_threads(1);
  const double ms = seconds([&] { one = mean_value(-1, '+', 30000); });
  omp_set_num_threads(threads);
  const double mp = seconds([&] { many = mean_value(-1, '+', 30000); });
  std::printf("mean-value 3e4   1 thread %.3f s  %d threads %.3f s  speedup %.2f  equal=%d\n", ms, threads, mp, ms / mp,
              one.empirical == many.empirical);
  return serial.estimate == parallel.estimate && one.empirical == many.empirical ? 0 : 1;
}
