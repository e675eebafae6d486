#pragma once

#include <vector>

#include "pasflab/rng.hpp"
#include "pasflab/space.hpp"

namespace pasflab {

/// Dense coordinate vector in a SipSpace.  Value type: entries are validated
/// finite at construction and never mutated afterwards.
class Vector {
 public:
  /// Throws std::invalid_argument on size mismatch, non-finite entries, or a
  /// nonzero imaginary part in a real space.
  Vector(std::vector<Cplx> coords, SipSpace space);

  static Vector zero(const SipSpace& space);

  /// Standard basis vector e_k, k zero-based.
  static Vector basis(const SipSpace& space, int k);

  const SipSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const std::vector<Cplx>& coords() const { return coords_; }
  Cplx operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<Cplx> coords_;
  SipSpace space_;
};

/// Coordinates of a bounded linear functional f(x) = sum_k x_k g_k on a
/// SipSpace; as a sequence it lives in the conjugate-exponent space l^q.
class DualVector {
 public:
  DualVector(std::vector<Cplx> coords, SipSpace primal_space);

  static DualVector zero(const SipSpace& primal_space);

  const SipSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const std::vector<Cplx>& coords() const { return coords_; }
  Cplx operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const DualVector&, const DualVector&) = default;

 private:
  std::vector<Cplx> coords_;
  SipSpace space_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(Cplx lambda, const Vector& x);

/// Largest |a_i - b_i|; spaces must match.
double max_abs_diff(const Vector& a, const Vector& b);

/// Entries i.i.d. uniform on [-1, 1] (both parts for a complex space).
Vector random_vector(const SipSpace& space, CounterRng& rng);

}  // namespace pasflab
