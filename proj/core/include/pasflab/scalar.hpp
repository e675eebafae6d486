#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pasflab {

/// Every scalar is carried as a (re, im) pair; the real field is the special
/// case with the imaginary part pinned to zero at construction and sampling.
using Cplx = std::complex<double>;

enum class Field { real, complex };

inline std::string to_string(Field f) {
  return f == Field::real ? "real" : "complex";
}

inline Field field_from_string(const std::string& s) {
  if (s == "real") return Field::real;
  if (s == "complex") return Field::complex;
  throw std::invalid_argument("unknown field \"" + s + "\" (expected \"real\" or \"complex\")");
}

inline bool is_finite(Cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// conj(z) * |z|^e with the continuous extension 0 at z = 0.  The extension
/// also covers negative exponents e, which appear whenever p < 2.
inline Cplx conj_abs_pow(Cplx z, double e) {
  const double a = std::abs(z);
  if (a == 0.0) return {0.0, 0.0};
  if (e == 0.0) return std::conj(z);  // keeps the p = 2 path bit-exact
  return std::conj(z) * std::pow(a, e);
}

}  // namespace pasflab
