#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pasflab/identities.hpp"

namespace pasflab {

struct SearchConfig {
  int restarts = 16;
  int max_iters = 300;
  double step_init = 0.1;
  double step_min = 1e-9;       // descent stops once backtracking reaches this
  double diff_step = 1e-5;      // central finite-difference step
  std::uint64_t seed = 0;
  bool restrict_to_hypothesis = false;  // reject iterates violating h >= 0
  int subset_sample = 256;      // random subsets drawn when N > 12
};

struct SearchOutcome {
  double best_ratio = 0.0;
  Vector best_x;
  IndexSet best_m;
  double hypothesis_at_best = 0.0;
  bool hypothesis_holds_at_best = false;
  /// (iteration, best ratio so far) of the winning descent; non-increasing.
  std::vector<std::pair<int, double>> trace;
  int subsets_examined = 0;
};

/// Adversarial minimization of ratio(M, x) = Re Q(x) / ||x||^2 over subsets
/// M and unit vectors x: projected gradient descent with central finite
/// differences and backtracking halving, multi-restart, one descent stream
/// per (subset, restart) so results are independent of thread count.
/// Subsets are exhaustive for N <= 12, sampled otherwise.  Requires a
/// Parseval pair (NotParsevalError otherwise).
SearchOutcome minimize_ratio(const Pasf& f, const SearchConfig& config);

struct HypothesisViolation {
  IndexSet m;
  Vector x;
  double h_value = 0.0;
};

/// Searches for (M, x) with Re [(S_M - I/2)^2 x, x] < -1e-8 by descending
/// on the hypothesis value; returns the first hit in deterministic subset
/// order, or nullopt when the budget finds none (always the case at p = 2
/// for Hermitian partial frame operators).
std::optional<HypothesisViolation> find_hypothesis_violation(const Pasf& f,
                                                             const SearchConfig& config);

}  // namespace pasflab
