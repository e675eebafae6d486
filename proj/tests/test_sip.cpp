#include <doctest.h>

#include <cmath>
#include <complex>

#include "pasflab/rng.hpp"
#include "pasflab/sip.hpp"
#include "pasflab/space.hpp"
#include "pasflab/vector.hpp"

#include "helpers.hpp"

using namespace pasflab;

TEST_SUITE("sip") {

TEST_CASE("lp_norm matches hand-computed values") {
  CHECK(lp_norm({{3.0, 0.0}, {4.0, 0.0}}, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  // ||(1, 2)||_3 = 9^(1/3)
  CHECK(lp_norm({{1.0, 0.0}, {2.0, 0.0}}, 3.0) ==
        doctest::Approx(2.080083823051904).epsilon(1e-15));
  // ||(1, 1)||_3 = 2^(1/3)
  CHECK(lp_norm({{1.0, 0.0}, {1.0, 0.0}}, 3.0) ==
        doctest::Approx(1.2599210498948732).epsilon(1e-15));
  // ||(1, 1)||_2 = sqrt(2)
  CHECK(lp_norm({{1.0, 0.0}, {1.0, 0.0}}, 2.0) ==
        doctest::Approx(1.4142135623730951).epsilon(1e-15));
}

TEST_CASE("lp_norm is exact on single-spike vectors") {
  // Max-scaling makes one-hot vectors exact for every exponent.
  for (double p : {1.3, 2.0, 2.7, 5.0, 9.0})
    CHECK(lp_norm({{0.0, 0.0}, {7.0, 0.0}, {0.0, 0.0}}, p) == 7.0);
}

TEST_CASE("lp_norm homogeneity and zero vector") {
  CounterRng rng(21);
  const SipSpace sp(5, 2.4, Field::complex);
  const Vector x = random_vector(sp, rng);
  CHECK(norm(3.0 * x) == doctest::Approx(3.0 * norm(x)).epsilon(1e-14));
  CHECK(norm(Vector::zero(sp)) == 0.0);
}

TEST_CASE("sip_eval frozen example at p = 3") {
  const SipSpace sp(2, 3.0, Field::real);
  const Vector x({{1.0, 0.0}, {0.0, 0.0}}, sp);
  const Vector y({{1.0, 0.0}, {1.0, 0.0}}, sp);
  // [x, y] = 1 / ||y||_3 = 2^(-1/3)
  CHECK(sip_eval(x, y).real() == doctest::Approx(0.7937005259840998).epsilon(1e-15));
  CHECK(sip_eval(x, y).imag() == 0.0);
}

TEST_CASE("second-slot additivity fails at p = 3 (counterexample)") {
  const SipSpace sp(2, 3.0, Field::real);
  const Vector x({{1.0, 0.0}, {0.0, 0.0}}, sp);
  const Vector y({{1.0, 0.0}, {0.0, 0.0}}, sp);
  const Vector z({{0.0, 0.0}, {1.0, 0.0}}, sp);
  const Cplx joint = sip_eval(x, y + z);
  const Cplx split = sip_eval(x, y) + sip_eval(x, z);
  CHECK(joint.real() == doctest::Approx(0.7937005259840998).epsilon(1e-15));
  CHECK(split.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(joint - split) > 0.2);
}

TEST_CASE("[x, x] equals the squared norm") {
  CounterRng rng(31);
  for (double p : {1.2, 1.5, 2.0, 3.0, 6.0}) {
    for (Field field : {Field::real, Field::complex}) {
      const SipSpace sp(6, p, field);
      const Vector x = random_vector(sp, rng);
      const double n2 = norm(x) * norm(x);
      const Cplx v = sip_eval(x, x);
      CHECK(std::abs(v.real() - n2) <= 1e-12 * (1.0 + n2));
      CHECK(std::abs(v.imag()) <= 1e-14 * (1.0 + n2));
    }
  }
}

TEST_CASE("p = 2 reduces to the plain Hermitian inner product") {
  CounterRng rng(47);
  const SipSpace sp(7, 2.0, Field::complex);
  for (int t = 0; t < 50; ++t) {
    const Vector x = random_vector(sp, rng);
    const Vector y = random_vector(sp, rng);
    Cplx dot{0.0, 0.0};
    for (int i = 0; i < sp.dim(); ++i) dot += x[i] * std::conj(y[i]);
    CHECK(std::abs(sip_eval(x, y) - dot) <= 1e-14 * (1.0 + std::abs(dot)));
  }
}

TEST_CASE("axiom sweep keeps deviations below 1e-8") {
  for (double p : {1.2, 1.5, 2.0, 3.0, 6.0}) {
    for (Field field : {Field::real, Field::complex}) {
      const SipSpace sp(5, p, field);
      const AxiomReport rep = verify_sip_axioms(sp, 200, 1234);
      CAPTURE(p);
      CHECK(rep.positivity <= 1e-8);
      CHECK(rep.homogeneity_first <= 1e-8);
      CHECK(rep.conj_homogeneity_second <= 1e-8);
      CHECK(rep.additivity_first <= 1e-8);
      CHECK(rep.cauchy_schwarz <= 1e-8);
      if (p == 2.0) CHECK(rep.additivity_second_deviation <= 1e-12);
    }
  }
}

TEST_CASE("second-slot additivity deviation is large away from p = 2") {
  const SipSpace sp(5, 3.0, Field::real);
  const AxiomReport rep = verify_sip_axioms(sp, 200, 99);
  CHECK(rep.additivity_second_deviation > 1e-3);
}

TEST_CASE("duality map frozen example and norm preservation") {
  const SipSpace sp(2, 3.0, Field::real);
  const Vector y({{1.0, 0.0}, {2.0, 0.0}}, sp);
  const DualVector g = duality_map(y);
  // J(y) = (1, 4) / 9^(1/3)
  CHECK(g.coords()[0].real() == doctest::Approx(0.4807498567691361).epsilon(1e-15));
  CHECK(g.coords()[1].real() == doctest::Approx(1.9229994270765445).epsilon(1e-15));
  CHECK(dual_norm(g) == doctest::Approx(norm(y)).epsilon(1e-14));
}

TEST_CASE("duality map respects [x, y] = sum x_i J(y)_i") {
  CounterRng rng(7);
  const SipSpace sp(6, 2.6, Field::complex);
  for (int t = 0; t < 20; ++t) {
    const Vector x = random_vector(sp, rng);
    const Vector y = random_vector(sp, rng);
    const DualVector g = duality_map(y);
    Cplx acc{0.0, 0.0};
    for (int i = 0; i < sp.dim(); ++i) acc += x[i] * g.coords()[i];
    CHECK(std::abs(acc - sip_eval(x, y)) <= 1e-13 * (1.0 + std::abs(acc)));
  }
}

TEST_CASE("riesz representer inverts the duality map across exponents") {
  CounterRng rng(13);
  for (double p : {1.1, 1.3, 1.7, 2.0, 2.6, 3.5, 5.0, 7.5, 10.0}) {
    for (Field field : {Field::real, Field::complex}) {
      const SipSpace sp(6, p, field);
      for (int t = 0; t < 10; ++t) {
        const Vector x = random_vector(sp, rng);
        const Vector back = riesz_representer(duality_map(x));
        CAPTURE(p);
        CHECK(max_abs_diff(back, x) <= 1e-10 * (1.0 + norm(x)));
      }
    }
  }
}

TEST_CASE("sip against the zero second argument is zero") {
  const SipSpace sp(3, 2.5, Field::real);
  const Vector x({{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}, sp);
  CHECK(sip_eval(x, Vector::zero(sp)) == Cplx{0.0, 0.0});
}

TEST_CASE("space validation rejects out-of-range exponents and dimensions") {
  CHECK_THROWS_AS(SipSpace(0, 2.0, Field::real), std::invalid_argument);
  CHECK_THROWS_AS(SipSpace(3, 1.0, Field::real), std::invalid_argument);
  CHECK_THROWS_AS(SipSpace(3, 0.5, Field::real), std::invalid_argument);
  const SipSpace sp(3, 3.0, Field::real);
  CHECK(sp.q() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_FALSE(sp.ill_conditioned_exponent());
  CHECK(SipSpace(3, 1.05, Field::real).ill_conditioned_exponent());
}

}  // TEST_SUITE
