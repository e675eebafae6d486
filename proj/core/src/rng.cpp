#include "pasflab/rng.hpp"

namespace pasflab {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

// splitmix64 finalizer: full-avalanche mix of a 64-bit word.
std::uint64_t CounterRng::mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix(seed_ + counter_ * kGolden);
}

double CounterRng::uniform01() {
  // 53 random bits over [0, 1); exact IEEE arithmetic on every platform.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_pm1() { return 2.0 * uniform01() - 1.0; }

Cplx CounterRng::scalar(Field field) {
  const double re = uniform_pm1();
  const double im = field == Field::complex ? uniform_pm1() : 0.0;
  return {re, im};
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = mix(seed ^ mix(a + kGolden));
  return mix(s ^ mix(b + 2 * kGolden));
}

}  // namespace pasflab
