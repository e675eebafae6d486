#pragma once

#include <cstdint>
#include <vector>

#include "pasflab/vector.hpp"

namespace pasflab {

/// l^p norm of a raw coordinate array, computed max-scaled so that vectors
/// with a single nonzero coordinate come out exact for every p.
double lp_norm(const std::vector<Cplx>& coords, double p);

/// l^p norm of x in its own space.
double norm(const Vector& x);

/// l^q norm of a functional's coordinates (q conjugate to the primal p).
double dual_norm(const DualVector& g);

/// Semi-inner product [x, y] on the common space of x and y:
///
///   [x, y] = (sum_n x_n conj(y_n) |y_n|^(p-2)) / ||y||_p^(p-2),   [x, 0] = 0.
///
/// Linear in the first slot, conjugate-homogeneous in the second, with
/// [x, x] = ||x||_p^2.  At p = 2 this is exactly the Hermitian dot product.
/// Additivity in the second slot genuinely fails for p != 2.
Cplx sip_eval(const Vector& x, const Vector& y);

/// Coordinates J(y) of the functional [., y], so that
/// sip_eval(x, y) = sum_n x_n J(y)_n and ||J(y)||_q = ||y||_p.
DualVector duality_map(const Vector& y);

/// The unique y with sip_eval(., y) == g as functionals; inverse of
/// duality_map.  In coordinates this is the conjugate-exponent duality map,
/// y_n = conj(g_n) |g_n|^(q-2) / ||g||_q^(q-2).
Vector riesz_representer(const DualVector& g);

/// Largest relative violation of each semi-inner-product axiom over random
/// triples (x, y, z) and scalars.  additivity_second_deviation is not an
/// axiom: it records how badly additivity in the second slot fails, which is
/// expected to be O(1) for p != 2.
struct AxiomReport {
  double positivity = 0.0;
  double homogeneity_first = 0.0;
  double conj_homogeneity_second = 0.0;
  double additivity_first = 0.0;
  double cauchy_schwarz = 0.0;
  double additivity_second_deviation = 0.0;
  int trials = 0;
};

/// Samples `trials` random triples in `space` and reports the violations.
/// Throws std::invalid_argument if trials < 1.
AxiomReport verify_sip_axioms(const SipSpace& space, int trials, std::uint64_t seed);

}  // namespace pasflab
