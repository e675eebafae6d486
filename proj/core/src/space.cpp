#include "pasflab/space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pasflab {

namespace {
constexpr double kMinExponent = 1.0 + 1e-6;
constexpr double kMaxExponent = 1e6;
}

SipSpace::SipSpace(int dim, double p, Field field)
    : dim_(dim), p_(p), q_(0.0), field_(field) {
  if (dim < 1) throw std::invalid_argument("SipSpace: dim must be >= 1");
  if (!std::isfinite(p) || p < kMinExponent || p > kMaxExponent)
    throw std::invalid_argument("SipSpace: exponent p = " + std::to_string(p) +
                                " outside the supported range [1 + 1e-6, 1e6]");
  q_ = p / (p - 1.0);
}

}  // namespace pasflab
