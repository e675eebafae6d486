#include "pasflab/sip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pasflab {

namespace {

void require_same_space(const Vector& x, const Vector& y, const char* what) {
  if (!(x.space() == y.space()))
    throw std::invalid_argument(std::string(what) + ": vectors live in different spaces");
}

// ||.||_p^(p-2) normalizer; exactly 1 at p = 2 so that case stays bit-exact.
double norm_weight(double nrm, double p) {
  if (p == 2.0) return 1.0;
  return std::pow(nrm, p - 2.0);
}

}  // namespace

double lp_norm(const std::vector<Cplx>& coords, double p) {
  double m = 0.0;
  for (const Cplx& z : coords) m = std::max(m, std::abs(z));
  if (m == 0.0) return 0.0;
  // Max-scaled so a single-spike vector yields exactly its spike magnitude
  // and no |z|^p overflows for moderate p.
  double s = 0.0;
  if (p == 2.0) {
    for (const Cplx& z : coords) {
      const double t = std::abs(z) / m;
      s += t * t;
    }
    return m * std::sqrt(s);
  }
  for (const Cplx& z : coords) {
    const double t = std::abs(z) / m;
    if (t != 0.0) s += std::pow(t, p);
  }
  return m * std::pow(s, 1.0 / p);
}

double norm(const Vector& x) { return lp_norm(x.coords(), x.space().p()); }

double dual_norm(const DualVector& g) { return lp_norm(g.coords(), g.space().q()); }

Cplx sip_eval(const Vector& x, const Vector& y) {
  require_same_space(x, y, "sip_eval");
  const double p = x.space().p();
  const double ny = lp_norm(y.coords(), p);
  if (ny == 0.0) return {0.0, 0.0};
  Cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.coords().size(); ++i)
    acc += x.coords()[i] * conj_abs_pow(y.coords()[i], p - 2.0);
  return acc / norm_weight(ny, p);
}

DualVector duality_map(const Vector& y) {
  const double p = y.space().p();
  const double ny = lp_norm(y.coords(), p);
  if (ny == 0.0) return DualVector::zero(y.space());
  const double w = norm_weight(ny, p);
  std::vector<Cplx> g(y.coords().size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = conj_abs_pow(y.coords()[i], p - 2.0) / w;
  if (y.space().field() == Field::real)
    for (Cplx& z : g) z = {z.real(), 0.0};
  return DualVector(std::move(g), y.space());
}

Vector riesz_representer(const DualVector& g) {
  const double q = g.space().q();
  const double ng = lp_norm(g.coords(), q);
  if (ng == 0.0) return Vector::zero(g.space());
  const double w = norm_weight(ng, q);
  std::vector<Cplx> y(g.coords().size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = conj_abs_pow(g.coords()[i], q - 2.0) / w;
  if (g.space().field() == Field::real)
    for (Cplx& z : y) z = {z.real(), 0.0};
  return Vector(std::move(y), g.space());
}

AxiomReport verify_sip_axioms(const SipSpace& space, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_sip_axioms: trials must be >= 1");
  constexpr double kTiny = 1e-300;
  AxiomReport report;
  report.trials = trials;
  CounterRng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Vector x = random_vector(space, rng);
    const Vector y = random_vector(space, rng);
    const Vector z = random_vector(space, rng);
    const Cplx lambda = rng.scalar(space.field());
    const double nx = norm(x), ny = norm(y), nz = norm(z);

    // (i) positivity: [x, x] is real and > 0 for x != 0.
    const Cplx xx = sip_eval(x, x);
    if (nx > 0.0) {
      const double v =
          (std::max(0.0, -xx.real()) + std::abs(xx.imag())) / std::max(kTiny, nx * nx);
      report.positivity = std::max(report.positivity, v);
    }

    // (ii) homogeneity in the first slot.
    {
      const Cplx lhs = sip_eval(lambda * x, y);
      const Cplx rhs = lambda * sip_eval(x, y);
      const double scale = std::max(kTiny, (1.0 + std::abs(lambda)) * nx * ny);
      report.homogeneity_first =
          std::max(report.homogeneity_first, std::abs(lhs - rhs) / scale);
    }

    // (iii) conjugate homogeneity in the second slot.
    {
      const Cplx lhs = sip_eval(x, lambda * y);
      const Cplx rhs = std::conj(lambda) * sip_eval(x, y);
      const double scale = std::max(kTiny, (1.0 + std::abs(lambda)) * nx * ny);
      report.conj_homogeneity_second =
          std::max(report.conj_homogeneity_second, std::abs(lhs - rhs) / scale);
    }

    // (iv) additivity in the first slot.
    {
      const Cplx lhs = sip_eval(x + z, y);
      const Cplx rhs = sip_eval(x, y) + sip_eval(z, y);
      const double scale = std::max(kTiny, (nx + nz) * ny);
      report.additivity_first =
          std::max(report.additivity_first, std::abs(lhs - rhs) / scale);
    }

    // (v) Cauchy-Schwarz: |[x, y]|^2 <= [x, x][y, y].
    {
      const double lhs = std::norm(sip_eval(x, y));
      const double rhs = nx * nx * ny * ny;
      report.cauchy_schwarz = std::max(
          report.cauchy_schwarz, std::max(0.0, lhs - rhs) / std::max(kTiny, rhs));
    }

    // Diagnostic only: additivity in the second slot fails for p != 2.
    {
      const Cplx lhs = sip_eval(x, y + z);
      const Cplx rhs = sip_eval(x, y) + sip_eval(x, z);
      const double scale = std::max(kTiny, nx * (ny + nz));
      report.additivity_second_deviation =
          std::max(report.additivity_second_deviation, std::abs(lhs - rhs) / scale);
    }
  }
  return report;
}

}  // namespace pasflab
