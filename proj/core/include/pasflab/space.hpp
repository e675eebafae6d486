#pragma once

#include "pasflab/scalar.hpp"

namespace pasflab {

/// Finite-dimensional coordinate space l^p with 1 < p < infinity, over the
/// real or complex field.  Carries the conjugate exponent q = p/(p-1).
class SipSpace {
 public:
  /// Throws std::invalid_argument unless dim >= 1 and p lies in
  /// [1 + 1e-6, 1e6].  p outside (1, inf) has no smooth duality map and is
  /// rejected rather than approximated.
  SipSpace(int dim, double p, Field field);

  int dim() const { return dim_; }
  double p() const { return p_; }
  double q() const { return q_; }
  Field field() const { return field_; }

  /// Exponents far from 2 make the |.|^(p-2) weights in the semi-inner
  /// product poorly conditioned; callers may want to warn.
  bool ill_conditioned_exponent() const { return p_ < 1.1 || p_ > 16.0; }

  friend bool operator==(const SipSpace&, const SipSpace&) = default;

 private:
  int dim_;
  double p_;
  double q_;
  Field field_;
};

}  // namespace pasflab
