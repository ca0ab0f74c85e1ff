// OpenMP kernels against their serial twins on seeded random inputs.
//
//   bench_kernels [repetitions]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "support/test_support.hpp"
#include "xgsigma/group/catalog.hpp"
#include "xgsigma/kernels/parallel.hpp"
#include "xgsigma/oracle/oracles.hpp"
#include "xgsigma/sigma/calculus.hpp"

using namespace xgs;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

template <class P, class S>
void compare(const char* name, int reps, P parallel, S serial) {
  std::vector<char> a, b;
  const double tp = best_of(reps, [&] { a = parallel(); });
  const double ts = best_of(reps, [&] { b = serial(); });
  std::printf("%-14s parallel %9.4f s  serial %9.4f s  speedup %5.2fx  %s\n", name, tp, ts, ts / tp,
              a == b ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d\n", kernels::max_threads());
  std::mt19937_64 rng(5);

  std::vector<geom::FeasibilitySystem> systems;
  for (int i = 0; i < 4000; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 4);
    systems.push_back({dim, testing::random_cell(rng, dim, 7).constraints});
  }
  compare("feasible_mask", reps, [&] { return kernels::feasible_mask(systems); },
          [&] { return kernels::feasible_mask_serial(systems); });

  const group::SigmaData f3 = group::catalog_lookup("free(3)");
  const geom::SphSet s1 = sigma::xg_sigma1_complement(f3).set;
  const auto rays = oracle::sample_rays(6, oracle::Sampler::random(200000, 9));
  compare("member_mask", reps, [&] { return kernels::member_mask(rays, s1); },
          [&] { return kernels::member_mask_serial(rays, s1); });

  const geom::SphSet a = testing::random_set(rng, 4, 12, 4), b = testing::random_set(rng, 4, 40, 3);
  compare("covered_mask", reps, [&] { return kernels::covered_mask(a, b, {}); },
          [&] { return kernels::covered_mask_serial(a, b, {}); });
  return 0;
}
