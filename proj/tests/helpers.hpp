#pragma once

#include <cstdint>

#include "pasflab/frames.hpp"
#include "pasflab/operators.hpp"
#include "pasflab/rng.hpp"

namespace testutil {

using namespace pasflab;

// Random certified frame with a modest condition number, so identity
// residuals sit orders of magnitude below the tolerances being tested.
// Seeds are retried deterministically.
inline Pasf tame_random_pasf(const SipSpace& space, int n, std::uint64_t seed,
                             bool parseval, double cond_cap = 1e3) {
  for (std::uint64_t k = 0; k < 64; ++k) {
    const std::uint64_t s = CounterRng::derive(seed, 0x7A3E, k);
    try {
      Pasf f = random_pasf(space, n, s, parseval);
      const Inversion inv = invert(frame_operator(f));
      if (inv.condition > cond_cap) continue;
      if (parseval) {
        const double residual = max_entry_diff(frame_operator(f),
                                               LinearOperator::identity(space));
        if (residual > 1e-12) continue;
      }
      return f;
    } catch (const GenerationError&) {
    } catch (const NotInvertibleError&) {
    }
  }
  throw GenerationError("tame_random_pasf: no well-conditioned frame found");
}

// Random square operator with entries in [-1, 1].
inline LinearOperator random_operator(const SipSpace& space, CounterRng& rng) {
  const int d = space.dim();
  std::vector<Cplx> entries(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (Cplx& z : entries) z = rng.scalar(space.field());
  return LinearOperator(std::move(entries), space, space);
}

}  // namespace testutil
