#include "pasflab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pasflab/rng.hpp"

namespace pasflab {

namespace {

std::vector<Cplx> flat_matvec(const std::vector<Cplx>& m, int rows, int cols,
                              const std::vector<Cplx>& x) {
  std::vector<Cplx> y(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    Cplx acc{0.0, 0.0};
    const std::size_t base = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols);
    for (int c = 0; c < cols; ++c)
      acc += m[base + static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

std::vector<Cplx> flat_matvec_transposed(const std::vector<Cplx>& m, int rows, int cols,
                                         const std::vector<Cplx>& x) {
  std::vector<Cplx> y(static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    const Cplx xr = x[static_cast<std::size_t>(r)];
    if (xr == Cplx{0.0, 0.0}) continue;
    const std::size_t base = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols);
    for (int c = 0; c < cols; ++c)
      y[static_cast<std::size_t>(c)] += m[base + static_cast<std::size_t>(c)] * xr;
  }
  return y;
}

double scale_of(Cplx lhs, Cplx rhs) {
  return std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// sum_i w_i J(x)_i, the bilinear pairing [w, x] with a cached J(x).
Cplx pair_with_dual(const std::vector<Cplx>& w, const std::vector<Cplx>& jx) {
  Cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * jx[i];
  return acc;
}

}  // namespace

NotParsevalError::NotParsevalError(double residual)
    : std::domain_error("frame pair is not Parseval: max|S - I| = " +
                        std::to_string(residual) + " exceeds tolerance"),
      residual_(residual) {}

IdentityResult lemma_uv_check(const LinearOperator& u, const LinearOperator& v) {
  if (!(u.domain() == v.domain()) || !(u.codomain() == v.codomain()) || !u.is_square())
    throw std::invalid_argument("lemma_uv_check: U and V must be square on one space");
  const LinearOperator i = LinearOperator::identity(u.domain());
  const double sum_residual = max_entry_diff(u + v, i);
  if (sum_residual > 1e-10)
    throw std::invalid_argument("lemma_uv_check: U + V != I (max-entry residual " +
                                std::to_string(sum_residual) + ")");
  const LinearOperator lhs = u - v;
  const LinearOperator rhs = matmul(u, u) - matmul(v, v);
  IdentityResult out;
  out.lhs = {lhs.max_entry(), 0.0};
  out.rhs = {rhs.max_entry(), 0.0};
  out.residual = max_entry_diff(lhs, rhs);
  const double un = u.inf_norm();
  out.scale = 1.0 + un * un;
  out.tol = 1e-10;
  out.passed = out.residual <= out.tol * out.scale;
  return out;
}

PasfEvaluator::PasfEvaluator(const Pasf& frame)
    : frame_(frame),
      dual_(canonical_dual(frame)),  // throws unless S is certifiably invertible
      n_(frame.size()),
      d_(frame.space().dim()) {
  const LinearOperator theta = analysis_operator(frame_);
  const LinearOperator synth = synthesis_operator(frame_);
  theta_ = theta.entries();
  synth_ = synth.entries();

  const LinearOperator s = frame_operator(frame_);
  s_ = s.entries();
  const Inversion inv = invert(s);
  s_inv_ = inv.inverse.entries();
  condition_ = inv.condition;
  parseval_residual_ = max_entry_diff(s, LinearOperator::identity(frame_.space()));

  // Cross Gram: gram_[n*N + k] = [tau_n, omega_k] = (theta . synth)_{k, n}.
  const LinearOperator cross = matmul(theta, synth);
  gram_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), Cplx{0.0, 0.0});
  for (int k = 0; k < n_; ++k)
    for (int n = 0; n < n_; ++n)
      gram_[static_cast<std::size_t>(n) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(k)] =
          cross.at(k, n);

  dual_theta_ = analysis_operator(dual_).entries();
  dual_synth_ = synthesis_operator(dual_).entries();
}

PasfEvaluator::Probe PasfEvaluator::probe(const Vector& x) const {
  if (!(x.space() == frame_.space()))
    throw std::invalid_argument("PasfEvaluator: x outside the frame space");
  Probe pr{x, {}, {}, {}, 0.0};
  pr.dual_coords = duality_map(x).coords();
  pr.coeff = flat_matvec(theta_, n_, d_, x.coords());
  pr.co_coeff = flat_matvec_transposed(synth_, d_, n_, pr.dual_coords);
  const double nx = norm(x);
  pr.norm_sq = nx * nx;
  return pr;
}

PasfEvaluator::SubsetContext PasfEvaluator::subset_context(const IndexSet& m) const {
  if (m.ambient() != n_)
    throw std::invalid_argument("PasfEvaluator: subset ambient size != N");
  return SubsetContext{m, partial_frame_operator(frame_, m).entries()};
}

Cplx PasfEvaluator::q_literal(const IndexSet& first, const IndexSet& second,
                              const Probe& pr) const {
  Cplx q{0.0, 0.0};
  for (int n = 1; n <= n_; ++n)
    if (first.contains(n))
      q += pr.coeff[static_cast<std::size_t>(n - 1)] * pr.co_coeff[static_cast<std::size_t>(n - 1)];
  for (int n = 1; n <= n_; ++n) {
    if (!second.contains(n)) continue;
    Cplx inner{0.0, 0.0};
    const std::size_t base = static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n_);
    for (int k = 1; k <= n_; ++k)
      if (second.contains(k))
        inner += gram_[base + static_cast<std::size_t>(k - 1)] * pr.co_coeff[static_cast<std::size_t>(k - 1)];
    q += pr.coeff[static_cast<std::size_t>(n - 1)] * inner;
  }
  return q;
}

Cplx PasfEvaluator::side_literal_parseval(const IndexSet& m, const Probe& pr) const {
  Cplx first{0.0, 0.0};
  for (int n = 1; n <= n_; ++n)
    if (m.contains(n))
      first += pr.coeff[static_cast<std::size_t>(n - 1)] * pr.co_coeff[static_cast<std::size_t>(n - 1)];
  Cplx second{0.0, 0.0};
  for (int n = 1; n <= n_; ++n) {
    if (!m.contains(n)) continue;
    Cplx inner{0.0, 0.0};
    const std::size_t base = static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n_);
    for (int k = 1; k <= n_; ++k)
      if (m.contains(k))
        inner += gram_[base + static_cast<std::size_t>(k - 1)] * pr.co_coeff[static_cast<std::size_t>(k - 1)];
    second += pr.coeff[static_cast<std::size_t>(n - 1)] * inner;
  }
  return first - second;
}

void PasfEvaluator::require_parseval() const {
  if (parseval_residual_ > kParsevalTolerance) throw NotParsevalError(parseval_residual_);
}

IdentityResult PasfEvaluator::general_identity(const IndexSet& m, const Vector& x,
                                               double tol_rel) const {
  const Probe pr = probe(x);
  const SipSpace& sp = frame_.space();
  const bool real_field = sp.field() == Field::real;

  auto side = [&](const IndexSet& set, Cplx* op_form) -> Cplx {
    // First sum, literally.
    Cplx first{0.0, 0.0};
    for (int n = 1; n <= n_; ++n)
      if (set.contains(n))
        first += pr.coeff[static_cast<std::size_t>(n - 1)] * pr.co_coeff[static_cast<std::size_t>(n - 1)];

    // u = S_set x and v = (S_set)+ x (generalized adjoint).
    const std::vector<Cplx> s_set = partial_frame_operator(frame_, set).entries();
    std::vector<Cplx> u = flat_matvec(s_set, d_, d_, x.coords());
    std::vector<Cplx> g = flat_matvec_transposed(s_set, d_, d_, pr.dual_coords);
    if (real_field) {
      for (Cplx& z : u) z = {z.real(), 0.0};
      for (Cplx& z : g) z = {z.real(), 0.0};
    }
    const Vector u_vec(u, sp);
    const Vector v_vec = riesz_representer(DualVector(std::move(g), sp));

    // Second sum over the full dual pair, literally.
    const std::vector<Cplx> a_dual = flat_matvec(dual_theta_, n_, d_, u_vec.coords());
    const std::vector<Cplx> jv = duality_map(v_vec).coords();
    const std::vector<Cplx> b_dual = flat_matvec_transposed(dual_synth_, d_, n_, jv);
    Cplx second{0.0, 0.0};
    for (int n = 0; n < n_; ++n)
      second += a_dual[static_cast<std::size_t>(n)] * b_dual[static_cast<std::size_t>(n)];

    // Operator-composition route: [S_set x, x] - [S^-1 S_set x, (S_set)+ x].
    std::vector<Cplx> siu = flat_matvec(s_inv_, d_, d_, u_vec.coords());
    if (real_field)
      for (Cplx& z : siu) z = {z.real(), 0.0};
    *op_form = pair_with_dual(u_vec.coords(), pr.dual_coords) -
               sip_eval(Vector(std::move(siu), sp), v_vec);

    return first - second;
  };

  Cplx op_lhs{0.0, 0.0}, op_rhs{0.0, 0.0};
  const Cplx lhs = side(m, &op_lhs);
  const Cplx rhs = side(m.complement(), &op_rhs);

  IdentityResult out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs);
  out.scale = scale_of(lhs, rhs);
  out.tol = tol_rel;
  out.passed = out.residual <= tol_rel * out.scale;
  out.alt_path_residual = std::max(std::abs(lhs - op_lhs), std::abs(rhs - op_rhs));
  return out;
}

IdentityResult PasfEvaluator::parseval_identity(const IndexSet& m, const Vector& x,
                                                double tol_rel) const {
  require_parseval();
  const Probe pr = probe(x);
  const SipSpace& sp = frame_.space();
  const bool real_field = sp.field() == Field::real;

  auto op_form = [&](const IndexSet& set) -> Cplx {
    // [S_set x, x] - [S_set x, (S_set)+ x].
    const std::vector<Cplx> s_set = partial_frame_operator(frame_, set).entries();
    std::vector<Cplx> u = flat_matvec(s_set, d_, d_, x.coords());
    std::vector<Cplx> g = flat_matvec_transposed(s_set, d_, d_, pr.dual_coords);
    if (real_field) {
      for (Cplx& z : u) z = {z.real(), 0.0};
      for (Cplx& z : g) z = {z.real(), 0.0};
    }
    const Vector u_vec(std::move(u), sp);
    const Vector v_vec = riesz_representer(DualVector(std::move(g), sp));
    return pair_with_dual(u_vec.coords(), pr.dual_coords) - sip_eval(u_vec, v_vec);
  };

  const IndexSet mc = m.complement();
  const Cplx lhs = side_literal_parseval(m, pr);
  const Cplx rhs = side_literal_parseval(mc, pr);

  IdentityResult out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs);
  out.scale = scale_of(lhs, rhs);
  out.tol = tol_rel;
  out.passed = out.residual <= tol_rel * out.scale;
  out.alt_path_residual =
      std::max(std::abs(lhs - op_form(m)), std::abs(rhs - op_form(mc)));
  return out;
}

double PasfEvaluator::operator_identity_residual(const IndexSet& m) const {
  require_parseval();
  if (m.ambient() != n_)
    throw std::invalid_argument("PasfEvaluator: subset ambient size != N");
  const LinearOperator s_m = partial_frame_operator(frame_, m);
  const LinearOperator s_mc = partial_frame_operator(frame_, m.complement());
  const LinearOperator lhs = s_m + matmul(s_mc, s_mc);
  const LinearOperator rhs = s_mc + matmul(s_m, s_m);
  return max_entry_diff(lhs, rhs);
}

BoundResult PasfEvaluator::bound(const IndexSet& m, const Vector& x) const {
  require_parseval();
  const Probe pr = probe(x);
  if (pr.norm_sq == 0.0)
    throw std::invalid_argument("bound: the ratio is undefined at x = 0");
  const IndexSet mc = m.complement();

  const Cplx q = q_literal(m, mc, pr);
  const Cplx q_sym = q_literal(mc, m, pr);

  BoundResult out;
  out.q_value = q.real();
  out.q_imag = std::abs(q.imag());
  out.norm_sq = pr.norm_sq;
  out.ratio = out.q_value / out.norm_sq;
  out.symmetric_form_residual = std::abs(q - q_sym);

  const SubsetContext sc = subset_context(m);
  const Cplx h = hypothesis_complex(sc, pr);
  out.hypothesis_value = h.real();
  out.hypothesis_imag = std::abs(h.imag());
  out.hypothesis_holds = out.hypothesis_value >= -1e-10;
  return out;
}

double PasfEvaluator::ratio(const IndexSet& m, const Probe& pr) const {
  if (pr.norm_sq == 0.0)
    throw std::invalid_argument("ratio: the ratio is undefined at x = 0");
  return q_literal(m, m.complement(), pr).real() / pr.norm_sq;
}

double PasfEvaluator::hypothesis(const SubsetContext& sc, const Probe& pr) const {
  return hypothesis_complex(sc, pr).real();
}

Cplx PasfEvaluator::hypothesis_complex(const SubsetContext& sc, const Probe& pr) const {
  // [(S_M - I/2)^2 x, x] with the cached S_M and J(x).
  const std::vector<Cplx>& xc = pr.x.coords();
  std::vector<Cplx> bx = flat_matvec(sc.s_m, d_, d_, xc);
  for (int i = 0; i < d_; ++i)
    bx[static_cast<std::size_t>(i)] -= 0.5 * xc[static_cast<std::size_t>(i)];
  std::vector<Cplx> bbx = flat_matvec(sc.s_m, d_, d_, bx);
  for (int i = 0; i < d_; ++i)
    bbx[static_cast<std::size_t>(i)] -= 0.5 * bx[static_cast<std::size_t>(i)];
  return pair_with_dual(bbx, pr.dual_coords);
}

IdentityResult general_identity_sides(const Pasf& f, const IndexSet& m, const Vector& x,
                                      double tol_rel) {
  return PasfEvaluator(f).general_identity(m, x, tol_rel);
}

IdentityResult parseval_identity_sides(const Pasf& f, const IndexSet& m, const Vector& x,
                                       double tol_rel) {
  return PasfEvaluator(f).parseval_identity(m, x, tol_rel);
}

double operator_identity_residual(const Pasf& f, const IndexSet& m) {
  return PasfEvaluator(f).operator_identity_residual(m);
}

BoundResult lower_bound_eval(const Pasf& f, const IndexSet& m, const Vector& x) {
  return PasfEvaluator(f).bound(m, x);
}

namespace {

Cplx hdot(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
  Cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  return acc;
}

double hnorm_sq(const std::vector<Cplx>& a) {
  double acc = 0.0;
  for (const Cplx& z : a) acc += std::norm(z);
  return acc;
}

}  // namespace

HilbertReport hilbert_suite(const Pasf& f, int trials, std::uint64_t seed) {
  if (f.space().p() != 2.0)
    throw std::invalid_argument("hilbert_suite: requires p = 2");
  if (trials < 1) throw std::invalid_argument("hilbert_suite: trials must be >= 1");
  const SipSpace& sp = f.space();
  const int d = sp.dim();
  const int n = f.size();

  // Classical frame operator of the tau family, S = sum tau_n tau_n^H,
  // assembled with plain Hermitian products (independent of sip_eval).
  std::vector<Cplx> s(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    const std::vector<Cplx>& t = f.tau()[static_cast<std::size_t>(i)].coords();
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        s[static_cast<std::size_t>(r) * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] +=
            t[static_cast<std::size_t>(r)] * std::conj(t[static_cast<std::size_t>(c)]);
  }
  const LinearOperator s_op(s, sp, sp);
  const Inversion inv = invert(s_op);  // tau family must be a frame

  // Dual vectors S^-1 tau_n for the frame identity.
  std::vector<std::vector<Cplx>> tau(static_cast<std::size_t>(n));
  std::vector<std::vector<Cplx>> tau_dual(static_cast<std::size_t>(n));
  std::vector<std::vector<Cplx>> tau_u(static_cast<std::size_t>(n));
  const LinearOperator z_op = inverse_sqrt_hpd(s_op);
  for (int i = 0; i < n; ++i) {
    tau[static_cast<std::size_t>(i)] = f.tau()[static_cast<std::size_t>(i)].coords();
    tau_dual[static_cast<std::size_t>(i)] =
        apply(inv.inverse, f.tau()[static_cast<std::size_t>(i)]).coords();
    tau_u[static_cast<std::size_t>(i)] =
        apply(z_op, f.tau()[static_cast<std::size_t>(i)]).coords();
  }

  HilbertReport report;
  const bool exhaustive = n <= 12;
  const std::uint64_t full_mask = IndexSet::full(n).bits();
  const std::uint64_t subset_count = exhaustive ? (1ULL << n) : static_cast<std::uint64_t>(trials);
  const int reps = exhaustive
                       ? std::max(1, trials / static_cast<int>(subset_count))
                       : 1;

  CounterRng rng(CounterRng::derive(seed, 7));
  for (std::uint64_t si = 0; si < subset_count; ++si) {
    const std::uint64_t mask = exhaustive ? si : (rng.next_u64() & full_mask);
    const IndexSet m(mask, n);
    const IndexSet mc = m.complement();
    for (int rep = 0; rep < reps; ++rep) {
      std::vector<Cplx> h(static_cast<std::size_t>(d));
      for (Cplx& zz : h) zz = rng.scalar(sp.field());
      const double h_norm_sq = hnorm_sq(h);
      if (h_norm_sq == 0.0) continue;

      auto coeff_sq_sum = [&](const IndexSet& set, const std::vector<std::vector<Cplx>>& fam) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k)
          if (set.contains(k)) acc += std::norm(hdot(h, fam[static_cast<std::size_t>(k - 1)]));
        return acc;
      };
      auto partial_sum = [&](const IndexSet& set, const std::vector<std::vector<Cplx>>& fam) {
        std::vector<Cplx> acc(static_cast<std::size_t>(d));
        for (int k = 1; k <= n; ++k) {
          if (!set.contains(k)) continue;
          const Cplx c = hdot(h, fam[static_cast<std::size_t>(k - 1)]);
          const std::vector<Cplx>& v = fam[static_cast<std::size_t>(k - 1)];
          for (int i = 0; i < d; ++i) acc[static_cast<std::size_t>(i)] += c * v[static_cast<std::size_t>(i)];
        }
        return acc;
      };

      // Frame identity: sum_{M}|<h,tau>|^2 - sum_all |<S_M h, taud>|^2 is
      // symmetric in M <-> M^c.
      {
        auto side = [&](const IndexSet& set) {
          const std::vector<Cplx> smh = partial_sum(set, tau);
          double second = 0.0;
          for (int k = 0; k < n; ++k)
            second += std::norm(hdot(smh, tau_dual[static_cast<std::size_t>(k)]));
          return coeff_sq_sum(set, tau) - second;
        };
        const double lhs = side(m), rhs = side(mc);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        report.frame_identity_max_residual =
            std::max(report.frame_identity_max_residual, std::abs(lhs - rhs) / scale);
      }

      // Parseval frame identity and the 3/4 bound on the rescaled family.
      {
        auto side = [&](const IndexSet& set) {
          const std::vector<Cplx> smh = partial_sum(set, tau_u);
          return coeff_sq_sum(set, tau_u) - hnorm_sq(smh);
        };
        const double lhs = side(m), rhs = side(mc);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        report.parseval_identity_max_residual =
            std::max(report.parseval_identity_max_residual, std::abs(lhs - rhs) / scale);

        const std::vector<Cplx> smc_h = partial_sum(mc, tau_u);
        const double q = coeff_sq_sum(m, tau_u) + hnorm_sq(smc_h);
        report.min_ratio = std::min(report.min_ratio, q / h_norm_sq);

        // Hypothesis (S_M - I/2)^2 >= 0 holds automatically: its value is
        // ||(S_M - I/2) h||^2 for the Hermitian partial operator.
        std::vector<Cplx> smh = partial_sum(m, tau_u);
        for (int i = 0; i < d; ++i)
          smh[static_cast<std::size_t>(i)] -= 0.5 * h[static_cast<std::size_t>(i)];
        report.min_hypothesis = std::min(report.min_hypothesis, hnorm_sq(smh));
      }

      ++report.cases;
    }
  }
  return report;
}

}  // namespace pasflab
