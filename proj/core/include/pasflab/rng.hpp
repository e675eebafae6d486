#pragma once

#include <cstdint>

#include "pasflab/scalar.hpp"

namespace pasflab {

/// Counter-based 64-bit generator: draw k is a pure integer hash of
/// (seed, k), so streams replay identically on any platform and can be
/// forked per work item without shared state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53 significant bits.
  double uniform01();

  /// Uniform on [-1, 1).
  double uniform_pm1();

  /// Entries i.i.d. uniform on [-1, 1); imaginary part forced to 0 for the
  /// real field.
  Cplx scalar(Field field);

  /// Pure stream derivation: mixes tags into a seed so that independent
  /// work items (retry attempt, subset, restart) own disjoint streams.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

 private:
  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace pasflab
