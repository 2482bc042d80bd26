// Benchmark: parallel Nef^k/Psef^k pairing table versus the serial reference
// on progressively subdivided products of projective lines.
//
//   fanlab_bench [subdivision steps] [k]
//
// Honors FANLAB_THREADS. Prints wall times and the speedup; exits nonzero if
// the two implementations ever disagree.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "fan_builders.hpp"
#include "fanlab/toric_intersect.hpp"

using namespace fanlab;

namespace {

ColoredFan base_fan() {
  ColoredFan fan;
  fan.lattice_rank = 3;
  auto ray = [&](long x, long y, long z) {
    IntVec v;
    v.emplace_back(x);
    v.emplace_back(y);
    v.emplace_back(z);
    fan.rays.push_back(std::move(v));
  };
  ray(1, 0, 0);
  ray(-1, 0, 0);
  ray(0, 1, 0);
  ray(0, -1, 0);
  ray(0, 0, 1);
  ray(0, 0, -1);
  for (std::size_t x : {0u, 1u})
    for (std::size_t y : {2u, 3u})
      for (std::size_t z : {4u, 5u}) fan.maximal_cones.push_back({{x, y, z}, {}});
  return fan;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool same(const NefkResult& a, const NefkResult& b) {
  if (a.equal != b.equal || a.certificate.has_value() != b.certificate.has_value())
    return false;
  if (!a.certificate) return true;
  return a.certificate->tau == b.certificate->tau &&
         a.certificate->sigma == b.certificate->sigma &&
         a.certificate->value == b.certificate->value;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t steps = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 12;
  std::size_t k = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 2;

  std::mt19937 rng(20240811);
  ColoredFan fan = builders::grow_random_fan(base_fan(), rng, steps);
  std::printf("fan: rank %zu, %zu rays, %zu maximal cones, k = %zu\n", fan.lattice_rank,
              fan.rays.size(), fan.maximal_cones.size(), k);

  auto t0 = std::chrono::steady_clock::now();
  NefkResult serial = nefk_eq_psefk_serial(fan, k);
  double serial_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  NefkResult parallel = nefk_eq_psefk(fan, k);
  double parallel_ms = ms_since(t0);

  std::printf("serial:   %10.2f ms\n", serial_ms);
  std::printf("parallel: %10.2f ms  (speedup %.2fx)\n", parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
  std::printf("equal: %s%s\n", serial.equal ? "yes" : "no",
              serial.certificate ? " (certificate found)" : "");

  if (!same(serial, parallel)) {
    std::fprintf(stderr, "MISMATCH between serial and parallel results\n");
    return 1;
  }
  return 0;
}
