#include <doctest.h>

#include <cmath>
#include <complex>

#include "pasflab/operators.hpp"
#include "pasflab/rng.hpp"
#include "pasflab/sip.hpp"

#include "helpers.hpp"

using namespace pasflab;
using testutil::random_operator;

namespace {

// Independent sigma_max oracle: classical power iteration on A^H A with
// plain Hermitian arithmetic (no duality maps involved).
double sigma_max_oracle(const LinearOperator& a, std::uint64_t seed) {
  const int d = a.cols();
  CounterRng rng(seed);
  std::vector<Cplx> v(static_cast<std::size_t>(d));
  for (Cplx& z : v) z = rng.scalar(a.domain().field());
  auto l2 = [](const std::vector<Cplx>& w) {
    double s = 0.0;
    for (const Cplx& z : w) s += std::norm(z);
    return std::sqrt(s);
  };
  double nv = l2(v);
  REQUIRE(nv > 0.0);
  for (Cplx& z : v) z /= nv;
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    // w = A^H (A v)
    std::vector<Cplx> av(static_cast<std::size_t>(a.rows()));
    for (int r = 0; r < a.rows(); ++r) {
      Cplx acc{0.0, 0.0};
      for (int c = 0; c < d; ++c) acc += a.at(r, c) * v[static_cast<std::size_t>(c)];
      av[static_cast<std::size_t>(r)] = acc;
    }
    std::vector<Cplx> w(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
      Cplx acc{0.0, 0.0};
      for (int r = 0; r < a.rows(); ++r)
        acc += std::conj(a.at(r, c)) * av[static_cast<std::size_t>(r)];
      w[static_cast<std::size_t>(c)] = acc;
    }
    const double nw = l2(w);
    if (nw == 0.0) return 0.0;
    const double next = nw;  // v normalized, so |w| -> lambda_max(A^H A)
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
    if (it > 50 && std::abs(next - lambda) <= 1e-14 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("invert matches the hand-computed 2x2 inverse") {
  const SipSpace sp(2, 2.0, Field::real);
  const LinearOperator a({{1, 0}, {2, 0}, {3, 0}, {4, 0}}, sp, sp);
  const Inversion inv = invert(a);
  CHECK(inv.inverse.at(0, 0).real() == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(inv.inverse.at(0, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(inv.inverse.at(1, 0).real() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(inv.inverse.at(1, 1).real() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(max_entry_diff(matmul(inv.inverse, a), LinearOperator::identity(sp)) < 1e-14);
}

TEST_CASE("invert reports the failing pivot on singular input") {
  const SipSpace sp(2, 2.0, Field::real);
  const LinearOperator a({{1, 0}, {2, 0}, {2, 0}, {4, 0}}, sp, sp);  // rank 1
  CHECK_THROWS_AS(invert(a), NotInvertibleError);
  try {
    invert(a);
  } catch (const NotInvertibleError& e) {
    CHECK(e.failing_pivot() < 1e-12 * a.inf_norm());
  }
  CHECK_THROWS_AS(invert(LinearOperator::zero(sp, sp)), NotInvertibleError);
}

TEST_CASE("condition of the identity is 1 and refinement stays consistent") {
  const SipSpace sp(4, 2.0, Field::real);
  const Inversion inv = invert(LinearOperator::identity(sp));
  CHECK(inv.condition == doctest::Approx(1.0).epsilon(1e-14));

  CounterRng rng(5);
  const LinearOperator a = random_operator(SipSpace(4, 2.0, Field::complex), rng);
  const Inversion plain = invert(a, false);
  const Inversion refined = invert(a, true);
  const SipSpace& dc = a.domain();
  const double r0 =
      max_entry_diff(matmul(plain.inverse, a), LinearOperator::identity(dc));
  const double r1 =
      max_entry_diff(matmul(refined.inverse, a), LinearOperator::identity(dc));
  CHECK(r1 <= r0 + 1e-13);
}

TEST_CASE("apply, matmul, and arithmetic agree on a small example") {
  const SipSpace sp(2, 3.0, Field::real);
  const LinearOperator a({{1, 0}, {2, 0}, {3, 0}, {4, 0}}, sp, sp);
  const Vector x({{1, 0}, {-1, 0}}, sp);
  const Vector ax = apply(a, x);
  CHECK(ax[0].real() == doctest::Approx(-1.0));
  CHECK(ax[1].real() == doctest::Approx(-1.0));
  const LinearOperator aa = matmul(a, a);
  CHECK(aa.at(0, 0).real() == doctest::Approx(7.0));
  CHECK(aa.at(1, 1).real() == doctest::Approx(22.0));
  CHECK(max_entry_diff(a + a, scale(2.0, a)) < 1e-15);
  CHECK((a - a).max_entry() == 0.0);
  CHECK(a.inf_norm() == doctest::Approx(7.0));
}

TEST_CASE("conjugate transpose conjugates, transpose does not") {
  const SipSpace sp(2, 2.0, Field::complex);
  const LinearOperator a({{1, 2}, {0, 0}, {0, 0}, {3, -4}}, sp, sp);
  CHECK(transpose(a).at(0, 0) == Cplx{1, 2});
  CHECK(conjugate_transpose(a).at(0, 0) == Cplx{1, -2});
  CHECK(conjugate_transpose(a).at(1, 1) == Cplx{3, 4});
}

TEST_CASE("generalized adjoint collapses to the Hermitian adjoint at p = 2") {
  CounterRng rng(11);
  const SipSpace sp(4, 2.0, Field::complex);
  for (int t = 0; t < 25; ++t) {
    const LinearOperator a = random_operator(sp, rng);
    const Vector y = random_vector(sp, rng);
    const Vector lhs = generalized_adjoint_apply(a, y);
    const Vector rhs = apply(conjugate_transpose(a), y);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * (1.0 + norm(rhs)));
  }
}

TEST_CASE("adjoint identity [Ax, y] = [x, adj(A) y]") {
  CounterRng rng(17);
  for (double p : {1.5, 2.0, 3.0}) {
    for (Field field : {Field::real, Field::complex}) {
      const SipSpace sp(4, p, field);
      for (int t = 0; t < 20; ++t) {
        const LinearOperator a = random_operator(sp, rng);
        const Vector x = random_vector(sp, rng);
        const Vector y = random_vector(sp, rng);
        const Cplx lhs = sip_eval(apply(a, x), y);
        const Cplx rhs = sip_eval(x, generalized_adjoint_apply(a, y));
        CAPTURE(p);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(lhs) + std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("adjoint is conjugate-homogeneous in the operator") {
  CounterRng rng(23);
  const SipSpace sp(3, 3.0, Field::complex);
  const Cplx lambda{0.7, -1.2};
  for (int t = 0; t < 10; ++t) {
    const LinearOperator a = random_operator(sp, rng);
    const Vector y = random_vector(sp, rng);
    const Vector lhs = generalized_adjoint_apply(scale(lambda, a), y);
    const Vector rhs = std::conj(lambda) * generalized_adjoint_apply(a, y);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-9 * (1.0 + norm(rhs)));
  }
}

TEST_CASE("AdjointMap agrees with generalized_adjoint_apply") {
  CounterRng rng(29);
  const SipSpace sp(4, 1.5, Field::real);
  const LinearOperator a = random_operator(sp, rng);
  const AdjointMap adj(a);
  for (int t = 0; t < 5; ++t) {
    const Vector y = random_vector(sp, rng);
    CHECK(max_abs_diff(adj(y), generalized_adjoint_apply(a, y)) == 0.0);
  }
}

TEST_CASE("p = 2 operator norm estimate matches the sigma_max oracle") {
  // Frozen example first: sigma_max([[1,2],[3,4]]) = sqrt(15 + sqrt(221)).
  const SipSpace sp2(2, 2.0, Field::real);
  const LinearOperator m({{1, 0}, {2, 0}, {3, 0}, {4, 0}}, sp2, sp2);
  const PnormEstimate fixed = pnorm_estimate(m, 2.0, 2.0, 4, 7);
  CHECK(fixed.lower_bound == doctest::Approx(5.464985704219043).epsilon(1e-10));

  CounterRng rng(37);
  for (int t = 0; t < 8; ++t) {
    const Field field = t % 2 == 0 ? Field::real : Field::complex;
    const SipSpace sp(4, 2.0, field);
    const LinearOperator a = random_operator(sp, rng);
    const double est = pnorm_estimate(a, 2.0, 2.0, 6, 1000 + t).lower_bound;
    const double oracle = sigma_max_oracle(a, 2000 + t);
    CHECK(std::abs(est - oracle) <= 1e-6 * std::max(1.0, oracle));
  }
}

TEST_CASE("diagonal operators are estimated exactly for any exponent pair") {
  for (double p : {1.5, 2.0, 3.0}) {
    const SipSpace sp(3, p, Field::real);
    const LinearOperator a({{1, 0}, {0, 0}, {0, 0},
                            {0, 0}, {-3, 0}, {0, 0},
                            {0, 0}, {0, 0}, {2, 0}},
                           sp, sp);
    const PnormEstimate est = pnorm_estimate(a, p, p, 3, 11);
    CHECK(est.lower_bound == 3.0);  // attained at the second basis vector
  }
}

TEST_CASE("pnorm estimate returns an attaining witness") {
  CounterRng rng(41);
  const SipSpace sp(4, 3.0, Field::real);
  const LinearOperator a = random_operator(sp, rng);
  const PnormEstimate est = pnorm_estimate(a, 3.0, 3.0, 4, 5);
  const double at_witness = norm(apply(a, est.witness)) / norm(est.witness);
  CHECK(est.lower_bound == doctest::Approx(at_witness).epsilon(1e-12));
}

TEST_CASE("pnorm estimate is monotone in the restart budget") {
  CounterRng rng(43);
  const SipSpace sp(5, 1.5, Field::complex);
  const LinearOperator a = random_operator(sp, rng);
  const double one = pnorm_estimate(a, 1.5, 1.5, 1, 77).lower_bound;
  const double six = pnorm_estimate(a, 1.5, 1.5, 6, 77).lower_bound;
  CHECK(one <= six + 1e-15);
}

TEST_CASE("hermitian part extremes on known matrices") {
  const SipSpace sp(3, 2.0, Field::real);
  const LinearOperator diag({{1, 0}, {0, 0}, {0, 0},
                             {0, 0}, {2, 0}, {0, 0},
                             {0, 0}, {0, 0}, {5, 0}},
                            sp, sp);
  const HermitianExtremes he = hermitian_part_extremes(diag, 3);
  CHECK(he.max_eig == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(he.min_eig == doctest::Approx(1.0).epsilon(1e-9));

  const SipSpace sp2(2, 2.0, Field::real);
  const LinearOperator nil({{0, 0}, {1, 0}, {0, 0}, {0, 0}}, sp2, sp2);
  const HermitianExtremes he2 = hermitian_part_extremes(nil, 3);
  CHECK(he2.max_eig == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(he2.min_eig == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("inverse square root of a Hermitian positive definite operator") {
  const SipSpace sp(2, 2.0, Field::real);
  const LinearOperator a({{4, 0}, {0, 0}, {0, 0}, {9, 0}}, sp, sp);
  const LinearOperator z = inverse_sqrt_hpd(a);
  CHECK(z.at(0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(z.at(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  CounterRng rng(53);
  const SipSpace sp4(4, 2.0, Field::complex);
  const LinearOperator mtx = random_operator(sp4, rng);
  const LinearOperator spd =
      matmul(conjugate_transpose(mtx), mtx) + scale(0.5, LinearOperator::identity(sp4));
  const LinearOperator zz = inverse_sqrt_hpd(spd);
  CHECK(max_entry_diff(matmul(matmul(zz, spd), zz), LinearOperator::identity(sp4)) <=
        1e-10);
}

}  // TEST_SUITE
