#include "pasflab/vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pasflab {

namespace {

void validate_coords(const std::vector<Cplx>& coords, const SipSpace& space,
                     const char* what) {
  if (static_cast<int>(coords.size()) != space.dim())
    throw std::invalid_argument(std::string(what) + ": coordinate count does not match dim");
  for (const Cplx& z : coords) {
    if (!is_finite(z))
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    if (space.field() == Field::real && z.imag() != 0.0)
      throw std::invalid_argument(std::string(what) +
                                  ": nonzero imaginary part in a real space");
  }
}

void require_same_space(const Vector& a, const Vector& b, const char* what) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument(std::string(what) + ": vectors live in different spaces");
}

}  // namespace

Vector::Vector(std::vector<Cplx> coords, SipSpace space)
    : coords_(std::move(coords)), space_(space) {
  validate_coords(coords_, space_, "Vector");
}

Vector Vector::zero(const SipSpace& space) {
  return Vector(std::vector<Cplx>(static_cast<std::size_t>(space.dim())), space);
}

Vector Vector::basis(const SipSpace& space, int k) {
  if (k < 0 || k >= space.dim())
    throw std::invalid_argument("Vector::basis: index out of range");
  std::vector<Cplx> c(static_cast<std::size_t>(space.dim()));
  c[static_cast<std::size_t>(k)] = {1.0, 0.0};
  return Vector(std::move(c), space);
}

DualVector::DualVector(std::vector<Cplx> coords, SipSpace primal_space)
    : coords_(std::move(coords)), space_(primal_space) {
  validate_coords(coords_, space_, "DualVector");
}

DualVector DualVector::zero(const SipSpace& primal_space) {
  return DualVector(std::vector<Cplx>(static_cast<std::size_t>(primal_space.dim())),
                    primal_space);
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same_space(a, b, "operator+");
  std::vector<Cplx> c(a.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
  return Vector(std::move(c), a.space());
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_space(a, b, "operator-");
  std::vector<Cplx> c(a.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords()[i];
  return Vector(std::move(c), a.space());
}

Vector operator*(Cplx lambda, const Vector& x) {
  if (x.space().field() == Field::real && lambda.imag() != 0.0)
    throw std::invalid_argument("operator*: complex scalar on a real-space vector");
  std::vector<Cplx> c(x.coords());
  for (Cplx& z : c) z *= lambda;
  return Vector(std::move(c), x.space());
}

double max_abs_diff(const Vector& a, const Vector& b) {
  require_same_space(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.coords().size(); ++i)
    m = std::max(m, std::abs(a.coords()[i] - b.coords()[i]));
  return m;
}

Vector random_vector(const SipSpace& space, CounterRng& rng) {
  std::vector<Cplx> c(static_cast<std::size_t>(space.dim()));
  for (Cplx& z : c) z = rng.scalar(space.field());
  return Vector(std::move(c), space);
}

}  // namespace pasflab
