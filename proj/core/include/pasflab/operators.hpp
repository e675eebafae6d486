#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pasflab/sip.hpp"
#include "pasflab/vector.hpp"

namespace pasflab {

/// Raised when elimination meets a pivot below the relative threshold
/// 1e-12 * ||A||_inf; carries the failing pivot magnitude.
class NotInvertibleError : public std::runtime_error {
 public:
  explicit NotInvertibleError(double failing_pivot, const std::string& detail = "");
  double failing_pivot() const { return failing_pivot_; }

 private:
  double failing_pivot_;
};

/// Dense linear operator between coordinate spaces, row-major storage.
/// Treated as a value: library functions never mutate their operands.
class LinearOperator {
 public:
  LinearOperator(std::vector<Cplx> entries, SipSpace domain, SipSpace codomain);

  static LinearOperator identity(const SipSpace& space);
  static LinearOperator zero(const SipSpace& domain, const SipSpace& codomain);

  int rows() const { return codomain_.dim(); }
  int cols() const { return domain_.dim(); }
  bool is_square() const { return rows() == cols(); }
  const SipSpace& domain() const { return domain_; }
  const SipSpace& codomain() const { return codomain_; }

  Cplx at(int r, int c) const { return entries_[idx(r, c)]; }
  Cplx& at(int r, int c) { return entries_[idx(r, c)]; }
  const std::vector<Cplx>& entries() const { return entries_; }

  /// Max absolute row sum (the operator norm l^inf -> l^inf).
  double inf_norm() const;

  /// Largest |a_rc|.
  double max_entry() const;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols()) +
           static_cast<std::size_t>(c);
  }

  std::vector<Cplx> entries_;
  SipSpace domain_;
  SipSpace codomain_;
};

/// A x; x must live in A's domain space.
Vector apply(const LinearOperator& A, const Vector& x);

LinearOperator matmul(const LinearOperator& A, const LinearOperator& B);
LinearOperator operator+(const LinearOperator& A, const LinearOperator& B);
LinearOperator operator-(const LinearOperator& A, const LinearOperator& B);
LinearOperator scale(Cplx lambda, const LinearOperator& A);
LinearOperator transpose(const LinearOperator& A);
LinearOperator conjugate_transpose(const LinearOperator& A);

/// Largest |a_rc - b_rc|.
double max_entry_diff(const LinearOperator& A, const LinearOperator& B);

struct Inversion {
  LinearOperator inverse;
  /// ||A||_inf * ||A^-1||_inf.
  double condition;
};

/// Gauss-Jordan with partial pivoting.  Throws NotInvertibleError when the
/// best remaining pivot falls below 1e-12 * ||A||_inf.  `refine` adds one
/// Newton correction step X <- X(2I - AX) after elimination.
Inversion invert(const LinearOperator& A, bool refine = false);

/// Generalized (Koehler) adjoint: the unique map with
///
///   sip_eval(A x, y) == sip_eval(x, adjoint(y))  for all x, y.
///
/// Computed as riesz_representer(A^T . duality_map(y)): the transpose acts
/// on bilinear dual coordinates (the Banach dual action), and the two
/// duality maps carry all conjugations.  Nonlinear for p != 2, so it is
/// never materialized as a matrix; at p = 2 it collapses to the conjugate
/// transpose.  A must be square with domain == codomain.
Vector generalized_adjoint_apply(const LinearOperator& A, const Vector& y);

/// Apply-style wrapper around generalized_adjoint_apply that caches the
/// transposed matrix for repeated use.
class AdjointMap {
 public:
  explicit AdjointMap(LinearOperator base);
  Vector operator()(const Vector& y) const;
  const LinearOperator& base() const { return base_; }

 private:
  LinearOperator base_;
  LinearOperator transposed_;
};

struct PnormEstimate {
  double lower_bound = 0.0;
  Vector witness;       // unit vector in l^{p_in} attaining lower_bound
  bool converged = true;
  int restarts_used = 0;
};

/// Certified lower bound for the operator norm of A from l^{p_in} to
/// l^{p_out} (the matrix is reinterpreted over those exponents).  Mixed-norm
/// power iteration: x <- normalized inverse-duality(p_in) of the transposed
/// dual action of duality(p_out)(A x).  One restart starts from the best
/// basis vector (diagonal operators are exact); the rest are random.  The
/// reported bound is re-evaluated at the witness, so witness and bound
/// always agree, and the bound is monotone in the number of restarts.
PnormEstimate pnorm_estimate(const LinearOperator& A, double p_in, double p_out,
                             int restarts, std::uint64_t seed);

/// Single-start variant: iterate from `start` only (no basis seeding).
PnormEstimate pnorm_iterate_from(const LinearOperator& A, double p_in, double p_out,
                                 const Vector& start);

struct HermitianExtremes {
  double min_eig = 0.0;
  double max_eig = 0.0;
};

/// Extreme eigenvalues of the Hermitian part (A + A^H)/2, by shifted power
/// iteration.  For a Hermitian A these are the extreme eigenvalues of A.
HermitianExtremes hermitian_part_extremes(const LinearOperator& A, std::uint64_t seed);

/// Inverse square root of a Hermitian positive definite operator
/// (Denman-Beavers iteration).  Throws NotInvertibleError if an iterate
/// degenerates.
LinearOperator inverse_sqrt_hpd(const LinearOperator& A);

}  // namespace pasflab
