#pragma once

#include <cstdint>
#include <limits>

#include "pasflab/frames.hpp"

namespace pasflab {

/// Raised when an operation requires a Parseval pair but max|S - I| exceeds
/// kParsevalTolerance; carries the measured residual.
class NotParsevalError : public std::domain_error {
 public:
  explicit NotParsevalError(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Two-sided identity evaluation.  `residual` = |lhs - rhs| and `passed`
/// means residual <= tol * scale with scale = max(1, |lhs|, |rhs|).
/// `alt_path_residual` compares the literal summation against an
/// operator-composition evaluation of the same quantity (0 when an
/// operation has a single path).  For matrix-valued checks lhs/rhs hold the
/// max-entry magnitudes of the two sides.
struct IdentityResult {
  Cplx lhs{0.0, 0.0};
  Cplx rhs{0.0, 0.0};
  double residual = 0.0;
  double scale = 1.0;
  double tol = 0.0;
  bool passed = false;
  double alt_path_residual = 0.0;
};

/// Lower-bound quantity at one (M, x):
///
///   Q(x) = sum_{n in M} [x, omega_n][tau_n, x]
///        + sum_{n,k in M^c} [x, omega_n][tau_n, omega_k][tau_k, x].
///
/// For a Parseval pair Q is symmetric under M <-> M^c
/// (symmetric_form_residual measures this), and whenever the hypothesis
/// h(x) = [(S_M - I/2)^2 x, x] >= 0 holds, ratio >= 3/4.  Real parts are
/// compared; imaginary leakage is reported separately.
struct BoundResult {
  double q_value = 0.0;
  double q_imag = 0.0;
  double hypothesis_value = 0.0;
  double hypothesis_imag = 0.0;
  double norm_sq = 0.0;
  double ratio = 0.0;
  bool hypothesis_holds = false;
  double symmetric_form_residual = 0.0;
};

/// For U + V = I (checked to 1e-10 max-entry; std::invalid_argument
/// otherwise): U - V = U^2 - V^2.  residual is the max-entry difference,
/// scale is 1 + ||U||_inf^2, and passed means residual <= 1e-10 * scale.
IdentityResult lemma_uv_check(const LinearOperator& u, const LinearOperator& v);

/// Precomputed context for sweeping identities over one frame: analysis and
/// synthesis matrices, frame operator and its inverse, the canonical dual
/// pair, and the cross Gram [tau_n, omega_k].  Immutable after construction
/// and safe to share across threads.  Throws NotInvertibleError if S is
/// singular or beyond the certification threshold.
class PasfEvaluator {
 public:
  explicit PasfEvaluator(const Pasf& frame);

  const Pasf& frame() const { return frame_; }
  double parseval_residual() const { return parseval_residual_; }
  double condition() const { return condition_; }

  /// Per-point cache: coefficient sequences and dual coordinates of x.
  struct Probe {
    Vector x;
    std::vector<Cplx> coeff;        // [x, omega_n]
    std::vector<Cplx> co_coeff;     // [tau_n, x]
    std::vector<Cplx> dual_coords;  // J(x)
    double norm_sq = 0.0;
  };
  Probe probe(const Vector& x) const;

  /// Per-subset cache: the partial frame operator matrix.
  struct SubsetContext {
    IndexSet m;
    std::vector<Cplx> s_m;  // d x d row-major
  };
  SubsetContext subset_context(const IndexSet& m) const;

  IdentityResult general_identity(const IndexSet& m, const Vector& x,
                                  double tol_rel = 1e-7) const;
  IdentityResult parseval_identity(const IndexSet& m, const Vector& x,
                                   double tol_rel = 1e-8) const;
  double operator_identity_residual(const IndexSet& m) const;
  BoundResult bound(const IndexSet& m, const Vector& x) const;

  /// Fast paths for search: Re Q / ||x||^2 and Re h at a cached probe.
  double ratio(const IndexSet& m, const Probe& pr) const;
  double hypothesis(const SubsetContext& sc, const Probe& pr) const;

 private:
  Cplx q_literal(const IndexSet& first, const IndexSet& second, const Probe& pr) const;
  Cplx side_literal_parseval(const IndexSet& m, const Probe& pr) const;
  Cplx hypothesis_complex(const SubsetContext& sc, const Probe& pr) const;
  void require_parseval() const;

  Pasf frame_;
  Pasf dual_;
  int n_;
  int d_;
  std::vector<Cplx> theta_;       // N x d analysis rows J(omega_n)
  std::vector<Cplx> synth_;       // d x N columns tau_n
  std::vector<Cplx> s_;           // d x d frame operator
  std::vector<Cplx> s_inv_;       // d x d
  std::vector<Cplx> gram_;        // N x N, gram_[n*N+k] = [tau_n, omega_k]
  std::vector<Cplx> dual_theta_;  // N x d rows J(omega~_n)
  std::vector<Cplx> dual_synth_;  // d x N columns tau~_n
  double parseval_residual_ = 0.0;
  double condition_ = 0.0;
};

/// One-shot wrappers; construct a PasfEvaluator when sweeping many (M, x).
///
/// Both identities compare the literal summation of the two sides and
/// cross-check against the operator-composition form in alt_path_residual.
IdentityResult general_identity_sides(const Pasf& f, const IndexSet& m,
                                      const Vector& x, double tol_rel = 1e-7);

/// Requires a Parseval pair (NotParsevalError otherwise).
IdentityResult parseval_identity_sides(const Pasf& f, const IndexSet& m,
                                       const Vector& x, double tol_rel = 1e-8);

/// Max-entry residual of S_M + S_{M^c}^2 - S_{M^c} - S_M^2 (Parseval only).
double operator_identity_residual(const Pasf& f, const IndexSet& m);

/// Q, hypothesis, and ratio at one (M, x); x must be nonzero and the pair
/// Parseval.
BoundResult lower_bound_eval(const Pasf& f, const IndexSet& m, const Vector& x);

/// Hilbert-space (p = 2) specialization check on the tau family of F,
/// computed with plain Hermitian dot products, independently of the
/// semi-inner-product machinery:
///   - frame identity with dual vectors S^-1 tau_n (F need only be a frame),
///   - Parseval frame identity on the symmetrically rescaled family
///     S^-1/2 tau_n,
///   - the 3/4 lower bound on that Parseval family.
/// Subsets are exhaustive for N <= 12, random otherwise; `trials` counts
/// total (M, h) cases.  Throws std::invalid_argument unless p = 2.
struct HilbertReport {
  double frame_identity_max_residual = 0.0;
  double parseval_identity_max_residual = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double min_hypothesis = std::numeric_limits<double>::infinity();
  int cases = 0;
};

HilbertReport hilbert_suite(const Pasf& f, int trials, std::uint64_t seed);

}  // namespace pasflab
