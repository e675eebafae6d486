#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pasflab/index_set.hpp"
#include "pasflab/operators.hpp"

namespace pasflab {

/// Frames whose operator condition exceeds this are refused certification.
inline constexpr double kConditionCertifyThreshold = 1e8;

/// A frame pair is treated as Parseval when max|S - I| is at most this.
inline constexpr double kParsevalTolerance = 1e-8;

/// Raised by generation when no certified sample is found within the retry
/// budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Approximate Schauder frame pair on a SipSpace: analysis representers
/// omega_n (the coefficient functionals are [., omega_n]) and reconstruction
/// vectors tau_n, n = 1..N.  Index sets over frames use 1-based indices.
class Pasf {
 public:
  /// Throws std::invalid_argument unless omega and tau are nonempty, equal
  /// length, and all live in `space`.
  Pasf(SipSpace space, std::vector<Vector> omega, std::vector<Vector> tau);

  const SipSpace& space() const { return space_; }
  int size() const { return static_cast<int>(omega_.size()); }
  const std::vector<Vector>& omega() const { return omega_; }
  const std::vector<Vector>& tau() const { return tau_; }

  friend bool operator==(const Pasf&, const Pasf&) = default;

 private:
  SipSpace space_;
  std::vector<Vector> omega_;
  std::vector<Vector> tau_;
};

struct FrameReport {
  double c_estimate = 0.0;        // lower bound for the analysis norm
  double d_estimate = 0.0;        // lower bound for the synthesis norm
  std::optional<double> a_estimate;  // p = 2 only: extreme eigenvalues of S
  std::optional<double> b_estimate;
  double condition_s = 0.0;
  double parseval_residual = 0.0;  // max|S - I|
  bool certified = false;
};

/// Coefficient sequence ([x, omega_n])_{n=1..N}.
std::vector<Cplx> analysis_apply(const Pasf& f, const Vector& x);

/// sum_n a_n tau_n for a coefficient sequence of length N.
Vector synthesis_apply(const Pasf& f, const std::vector<Cplx>& a);

/// N x d matrix with rows J(omega_n): maps x to its coefficient sequence.
LinearOperator analysis_operator(const Pasf& f);

/// d x N matrix with columns tau_n.
LinearOperator synthesis_operator(const Pasf& f);

/// Frame operator S x = sum_n [x, omega_n] tau_n, as a d x d matrix.
LinearOperator frame_operator(const Pasf& f);

/// S_M x = sum_{n in M} [x, omega_n] tau_n.  S_M + S_{M^c} = S.
LinearOperator partial_frame_operator(const Pasf& f, const IndexSet& m);

/// Norm estimates, conditioning, and the Parseval residual.  A singular
/// frame operator yields certified = false with condition +inf rather than
/// an error, so generation can retry.
FrameReport certify(const Pasf& f, int restarts, std::uint64_t seed);

/// Canonical dual pair: omega~_n = (S^-1)+ omega_n (generalized adjoint),
/// tau~_n = S^-1 tau_n.  Its frame operator is S^-1.  Throws
/// NotInvertibleError when S is singular or its condition exceeds the
/// certification threshold.
Pasf canonical_dual(const Pasf& f);

/// Replaces tau_n by S^-1 tau_n, making the pair Parseval (S' = I up to
/// inversion error).  Same errors as canonical_dual.
Pasf parsevalize(const Pasf& f);

/// Random frame: entries i.i.d. uniform on [-1, 1]; retries fresh seed
/// streams until certified (at most 20).  With parseval = true the result
/// is Parseval: at p = 2 via a random matrix with orthonormalized columns
/// whose rows give omega_n = tau_n (needs N >= dim), otherwise via
/// parsevalize.  Byte-identical output for a fixed (space, N, seed).
Pasf random_pasf(const SipSpace& space, int n, std::uint64_t seed, bool parseval);

}  // namespace pasflab
