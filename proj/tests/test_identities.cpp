#include <doctest.h>

#include <cmath>
#include <complex>

#include "pasflab/identities.hpp"
#include "pasflab/rng.hpp"
#include "pasflab/sip.hpp"

#include "helpers.hpp"

using namespace pasflab;
using testutil::random_operator;
using testutil::tame_random_pasf;

namespace {

Pasf extremal_pair() {
  const SipSpace sp(1, 2.0, Field::real);
  const Vector h({{0.7071067811865476, 0.0}}, sp);
  return Pasf(sp, {h, h}, {h, h});
}

}  // namespace

TEST_SUITE("identities") {

TEST_CASE("operator lemma holds for random complementary pairs") {
  CounterRng rng(61);
  const SipSpace sp(6, 2.0, Field::complex);
  for (int t = 0; t < 25; ++t) {
    const LinearOperator u = random_operator(sp, rng);
    const LinearOperator v = LinearOperator::identity(sp) - u;
    const IdentityResult res = lemma_uv_check(u, v);
    CHECK(res.passed);
    CHECK(res.residual <= 1e-10 * res.scale);
  }
}

TEST_CASE("operator lemma rejects pairs that do not sum to the identity") {
  CounterRng rng(67);
  const SipSpace sp(3, 2.0, Field::real);
  const LinearOperator u = random_operator(sp, rng);
  CHECK_THROWS_AS(lemma_uv_check(u, u), std::invalid_argument);
}

TEST_CASE("extremal pair attains 0.25 on both identity sides and ratio 0.75") {
  const Pasf f = extremal_pair();
  const PasfEvaluator ev(f);
  CHECK(ev.parseval_residual() <= 1e-15);
  const IndexSet m = IndexSet::of({1}, 2);
  const Vector x({{1.0, 0.0}}, f.space());

  const IdentityResult id = ev.parseval_identity(m, x);
  CHECK(id.lhs.real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(id.rhs.real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(id.residual <= 1e-14);
  CHECK(id.passed);

  const BoundResult b = ev.bound(m, x);
  CHECK(b.q_value == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(b.ratio == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(b.hypothesis_holds);
  CHECK(std::abs(b.hypothesis_value) <= 1e-12);
  CHECK(b.symmetric_form_residual <= 1e-14);
}

TEST_CASE("general identity sweep: exhaustive subsets, random probes") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (Field field : {Field::real, Field::complex}) {
      const SipSpace sp(3, p, field);
      const Pasf f = tame_random_pasf(sp, 5, 808 + static_cast<std::uint64_t>(100 * p),
                                      false);
      const PasfEvaluator ev(f);
      CounterRng rng(CounterRng::derive(909, static_cast<std::uint64_t>(p * 8)));
      int failures = 0;
      double max_rel = 0.0;
      for (std::uint64_t bits = 0; bits < 32; ++bits) {
        const IndexSet m(bits, 5);
        for (int t = 0; t < 4; ++t) {
          const Vector x = random_vector(sp, rng);
          const IdentityResult res = ev.general_identity(m, x);
          if (!res.passed) ++failures;
          max_rel = std::max(max_rel, res.residual / res.scale);
          CHECK(res.alt_path_residual <= 1e-7 * res.scale);
        }
      }
      CAPTURE(p);
      CHECK(failures == 0);
      CHECK(max_rel <= 1e-7);
    }
  }
}

TEST_CASE("general identity sides vanish on the full index set") {
  const SipSpace sp(3, 3.0, Field::real);
  const Pasf f = tame_random_pasf(sp, 5, 111, false);
  CounterRng rng(222);
  const Vector x = random_vector(sp, rng);
  const IdentityResult res = general_identity_sides(f, IndexSet::full(5), x);
  CHECK(res.rhs == Cplx{0.0, 0.0});  // complement side is empty
  CHECK(res.residual <= 1e-9);
}

TEST_CASE("parseval identity demands a Parseval pair") {
  const SipSpace sp(2, 3.0, Field::real);
  const Pasf f = tame_random_pasf(sp, 4, 333, false);  // not parsevalized
  CounterRng rng(444);
  const Vector x = random_vector(sp, rng);
  CHECK_THROWS_AS(parseval_identity_sides(f, IndexSet::of({1}, 4), x), NotParsevalError);
  try {
    parseval_identity_sides(f, IndexSet::of({1}, 4), x);
  } catch (const NotParsevalError& e) {
    CHECK(e.residual() > kParsevalTolerance);
  }
  CHECK_THROWS_AS(operator_identity_residual(f, IndexSet::of({1}, 4)), NotParsevalError);
  CHECK_THROWS_AS(lower_bound_eval(f, IndexSet::of({1}, 4), x), NotParsevalError);
}

TEST_CASE("parseval identity sweep with literal and operator paths agreeing") {
  for (double p : {1.5, 2.0, 3.0}) {
    const SipSpace sp(3, p, Field::complex);
    const Pasf f = tame_random_pasf(sp, 5, 555 + static_cast<std::uint64_t>(100 * p),
                                    true);
    const PasfEvaluator ev(f);
    CounterRng rng(666);
    for (std::uint64_t bits = 0; bits < 32; ++bits) {
      const IndexSet m(bits, 5);
      const double op_res = ev.operator_identity_residual(m);
      CHECK(op_res <= 1e-9 + 10.0 * ev.parseval_residual());
      for (int t = 0; t < 3; ++t) {
        const Vector x = random_vector(sp, rng);
        const IdentityResult res = ev.parseval_identity(m, x);
        CAPTURE(p);
        CHECK(res.passed);
        CHECK(res.residual <= 1e-8 * res.scale);
        CHECK(res.alt_path_residual <= 1e-7 * res.scale);
      }
    }
  }
}

TEST_CASE("operator identity is exact for the standard basis pair") {
  const SipSpace sp(3, 2.0, Field::real);
  std::vector<Vector> basis;
  for (int k = 0; k < 3; ++k) basis.push_back(Vector::basis(sp, k));
  const Pasf f(sp, basis, basis);
  CHECK(operator_identity_residual(f, IndexSet::of({1, 3}, 3)) == 0.0);
}

TEST_CASE("lower bound evaluation rejects the zero vector") {
  const Pasf f = extremal_pair();
  CHECK_THROWS_AS(lower_bound_eval(f, IndexSet::of({1}, 2), Vector::zero(f.space())),
                  std::invalid_argument);
}

TEST_CASE("bound is symmetric and respects 3/4 under the hypothesis (p = 2)") {
  const SipSpace sp(3, 2.0, Field::real);
  const Pasf f = tame_random_pasf(sp, 6, 717, true);
  const PasfEvaluator ev(f);
  CounterRng rng(718);
  for (std::uint64_t bits = 0; bits < 64; ++bits) {
    const IndexSet m(bits, 6);
    for (int t = 0; t < 2; ++t) {
      const Vector x = random_vector(sp, rng);
      const BoundResult b = ev.bound(m, x);
      CHECK(b.symmetric_form_residual <= 1e-10 * std::max(1.0, std::abs(b.q_value)));
      CHECK(b.hypothesis_holds);  // Hermitian projections keep h >= 0 at p = 2
      CHECK(b.ratio >= 0.75 - 1e-6);
    }
  }
}

TEST_CASE("hilbert suite agrees with the evaluator on a shared probe") {
  const SipSpace sp(3, 2.0, Field::complex);
  const Pasf f = tame_random_pasf(sp, 6, 999, true);  // orthonormal rows, omega == tau
  const IndexSet m = IndexSet::of({2, 3, 5}, 6);
  CounterRng rng(1001);
  const Vector x = random_vector(sp, rng);

  // Hermitian-arithmetic evaluation of the same bound quantity.
  auto hdot = [&](const Vector& a, const Vector& b) {
    Cplx acc{0.0, 0.0};
    for (int i = 0; i < sp.dim(); ++i) acc += a[i] * std::conj(b[i]);
    return acc;
  };
  double first = 0.0;
  for (int n = 1; n <= 6; ++n)
    if (m.contains(n)) first += std::norm(hdot(x, f.tau()[n - 1]));
  Vector smc = Vector::zero(sp);
  for (int n = 1; n <= 6; ++n)
    if (!m.contains(n)) smc = smc + hdot(x, f.tau()[n - 1]) * f.tau()[n - 1];
  const double q_hermitian = first + std::pow(norm(smc), 2.0);

  const BoundResult b = lower_bound_eval(f, m, x);
  CHECK(b.q_value == doctest::Approx(q_hermitian).epsilon(1e-12));
}

TEST_CASE("hilbert suite sweeps cleanly over a p = 2 frame") {
  const SipSpace sp(3, 2.0, Field::real);
  const Pasf f = tame_random_pasf(sp, 6, 1212, false);
  const HilbertReport rep = hilbert_suite(f, 200, 5);
  CHECK(rep.cases == 192);  // 64 subsets x max(1, 200/64) probes
  CHECK(rep.frame_identity_max_residual <= 1e-10);
  CHECK(rep.parseval_identity_max_residual <= 1e-10);
  CHECK(rep.min_ratio >= 0.75 - 1e-9);
  CHECK(rep.min_hypothesis >= 0.0);
}

TEST_CASE("hilbert suite rejects p != 2 and bad trial counts") {
  const SipSpace sp(2, 3.0, Field::real);
  const Pasf f = tame_random_pasf(sp, 4, 1313, false);
  CHECK_THROWS_AS(hilbert_suite(f, 10, 1), std::invalid_argument);
  const SipSpace sp2(2, 2.0, Field::real);
  const Pasf f2 = tame_random_pasf(sp2, 4, 1414, false);
  CHECK_THROWS_AS(hilbert_suite(f2, 0, 1), std::invalid_argument);
}

TEST_CASE("free wrappers match the evaluator") {
  const SipSpace sp(2, 2.5, Field::real);
  const Pasf f = tame_random_pasf(sp, 4, 1515, true);
  const PasfEvaluator ev(f);
  CounterRng rng(1616);
  const Vector x = random_vector(sp, rng);
  const IndexSet m = IndexSet::of({1, 4}, 4);
  const IdentityResult a = general_identity_sides(f, m, x);
  const IdentityResult b = ev.general_identity(m, x);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(lower_bound_eval(f, m, x).q_value == ev.bound(m, x).q_value);
}

}  // TEST_SUITE
