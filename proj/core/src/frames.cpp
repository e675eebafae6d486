#include "pasflab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "pasflab/rng.hpp"

namespace pasflab {

Pasf::Pasf(SipSpace space, std::vector<Vector> omega, std::vector<Vector> tau)
    : space_(space), omega_(std::move(omega)), tau_(std::move(tau)) {
  if (omega_.empty() || omega_.size() != tau_.size())
    throw std::invalid_argument("Pasf: omega and tau must be nonempty and of equal length");
  for (const Vector& v : omega_)
    if (!(v.space() == space_))
      throw std::invalid_argument("Pasf: omega vector outside the frame space");
  for (const Vector& v : tau_)
    if (!(v.space() == space_))
      throw std::invalid_argument("Pasf: tau vector outside the frame space");
}

std::vector<Cplx> analysis_apply(const Pasf& f, const Vector& x) {
  if (!(x.space() == f.space()))
    throw std::invalid_argument("analysis_apply: x outside the frame space");
  std::vector<Cplx> a(static_cast<std::size_t>(f.size()));
  for (int n = 0; n < f.size(); ++n)
    a[static_cast<std::size_t>(n)] = sip_eval(x, f.omega()[static_cast<std::size_t>(n)]);
  return a;
}

Vector synthesis_apply(const Pasf& f, const std::vector<Cplx>& a) {
  if (static_cast<int>(a.size()) != f.size())
    throw std::invalid_argument("synthesis_apply: coefficient count does not match N");
  std::vector<Cplx> acc(static_cast<std::size_t>(f.space().dim()));
  for (int n = 0; n < f.size(); ++n) {
    const Cplx an = a[static_cast<std::size_t>(n)];
    if (an == Cplx{0.0, 0.0}) continue;
    const std::vector<Cplx>& t = f.tau()[static_cast<std::size_t>(n)].coords();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += an * t[i];
  }
  if (f.space().field() == Field::real)
    for (Cplx& z : acc) z = {z.real(), 0.0};
  return Vector(std::move(acc), f.space());
}

LinearOperator analysis_operator(const Pasf& f) {
  const int n = f.size(), d = f.space().dim();
  const SipSpace coeff_space(n, f.space().p(), f.space().field());
  std::vector<Cplx> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    const DualVector j = duality_map(f.omega()[static_cast<std::size_t>(i)]);
    for (int c = 0; c < d; ++c)
      rows[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] = j[c];
  }
  return LinearOperator(std::move(rows), f.space(), coeff_space);
}

LinearOperator synthesis_operator(const Pasf& f) {
  const int n = f.size(), d = f.space().dim();
  const SipSpace coeff_space(n, f.space().p(), f.space().field());
  std::vector<Cplx> cols(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < d; ++r)
      cols[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          f.tau()[static_cast<std::size_t>(i)][r];
  return LinearOperator(std::move(cols), coeff_space, f.space());
}

LinearOperator partial_frame_operator(const Pasf& f, const IndexSet& m) {
  if (m.ambient() != f.size())
    throw std::invalid_argument("partial_frame_operator: subset ambient size != N");
  const int d = f.space().dim();
  std::vector<Cplx> s(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
  for (int n = 1; n <= f.size(); ++n) {
    if (!m.contains(n)) continue;
    const DualVector j = duality_map(f.omega()[static_cast<std::size_t>(n - 1)]);
    const Vector& t = f.tau()[static_cast<std::size_t>(n - 1)];
    for (int r = 0; r < d; ++r) {
      const Cplx tr = t[r];
      if (tr == Cplx{0.0, 0.0}) continue;
      for (int c = 0; c < d; ++c)
        s[static_cast<std::size_t>(r) * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] += tr * j[c];
    }
  }
  if (f.space().field() == Field::real)
    for (Cplx& z : s) z = {z.real(), 0.0};
  return LinearOperator(std::move(s), f.space(), f.space());
}

LinearOperator frame_operator(const Pasf& f) {
  return partial_frame_operator(f, IndexSet::full(f.size()));
}

FrameReport certify(const Pasf& f, int restarts, std::uint64_t seed) {
  FrameReport report;
  const LinearOperator theta = analysis_operator(f);
  const LinearOperator synth = synthesis_operator(f);
  const LinearOperator s = frame_operator(f);
  const double p = f.space().p();

  report.c_estimate =
      pnorm_estimate(theta, p, p, restarts, CounterRng::derive(seed, 1)).lower_bound;
  report.d_estimate =
      pnorm_estimate(synth, p, p, restarts, CounterRng::derive(seed, 2)).lower_bound;

  const LinearOperator i = LinearOperator::identity(f.space());
  report.parseval_residual = max_entry_diff(s, i);

  try {
    const Inversion inv = invert(s);
    report.condition_s = inv.condition;
    report.certified = inv.condition <= kConditionCertifyThreshold;
  } catch (const NotInvertibleError&) {
    report.condition_s = std::numeric_limits<double>::infinity();
    report.certified = false;
  }

  if (p == 2.0) {
    const HermitianExtremes ext = hermitian_part_extremes(s, CounterRng::derive(seed, 3));
    report.a_estimate = ext.min_eig;
    report.b_estimate = ext.max_eig;
  }
  return report;
}

namespace {

Inversion invert_certified(const Pasf& f, const char* what) {
  const LinearOperator s = frame_operator(f);
  Inversion inv = invert(s);  // NotInvertibleError propagates
  if (inv.condition > kConditionCertifyThreshold)
    throw NotInvertibleError(inv.condition,
                             std::string(what) + ": condition above certification threshold");
  return inv;
}

}  // namespace

Pasf canonical_dual(const Pasf& f) {
  const Inversion inv = invert_certified(f, "canonical_dual");
  std::vector<Vector> omega_d, tau_d;
  omega_d.reserve(static_cast<std::size_t>(f.size()));
  tau_d.reserve(static_cast<std::size_t>(f.size()));
  const AdjointMap adj(inv.inverse);
  for (int n = 0; n < f.size(); ++n) {
    omega_d.push_back(adj(f.omega()[static_cast<std::size_t>(n)]));
    tau_d.push_back(apply(inv.inverse, f.tau()[static_cast<std::size_t>(n)]));
  }
  return Pasf(f.space(), std::move(omega_d), std::move(tau_d));
}

Pasf parsevalize(const Pasf& f) {
  const Inversion inv = invert_certified(f, "parsevalize");
  std::vector<Vector> tau_p;
  tau_p.reserve(static_cast<std::size_t>(f.size()));
  for (int n = 0; n < f.size(); ++n)
    tau_p.push_back(apply(inv.inverse, f.tau()[static_cast<std::size_t>(n)]));
  return Pasf(f.space(), f.omega(), std::move(tau_p));
}

namespace {

// Modified Gram-Schmidt with one reorthogonalization pass on the d columns
// of a rows x d matrix; false on rank deficiency.
bool orthonormalize_columns(std::vector<Cplx>& b, int rows, int d) {
  auto at = [&](int r, int c) -> Cplx& {
    return b[static_cast<std::size_t>(r) * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)];
  };
  for (int j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        Cplx r{0.0, 0.0};
        for (int k = 0; k < rows; ++k) r += at(k, j) * std::conj(at(k, i));
        for (int k = 0; k < rows; ++k) at(k, j) -= r * at(k, i);
      }
    }
    double nrm = 0.0;
    for (int k = 0; k < rows; ++k) nrm += std::norm(at(k, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) return false;
    for (int k = 0; k < rows; ++k) at(k, j) /= nrm;
  }
  return true;
}

// Parseval pair at p = 2: rows of a random matrix with orthonormal columns,
// so S = sum_n tau_n tau_n^H = I exactly up to orthogonalization error.
Pasf orthonormal_row_pasf(const SipSpace& space, int n, CounterRng& rng) {
  const int d = space.dim();
  if (n < d)
    throw GenerationError("random_pasf: a Parseval pair at p = 2 needs N >= dim");
  std::vector<Cplx> b(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (Cplx& z : b) z = rng.scalar(space.field());
  if (!orthonormalize_columns(b, n, d))
    throw GenerationError("random_pasf: rank-deficient sample");
  std::vector<Vector> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Cplx> row(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c)
      row[static_cast<std::size_t>(c)] =
          b[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)];
    rows.emplace_back(std::move(row), space);
  }
  return Pasf(space, rows, rows);
}

}  // namespace

Pasf random_pasf(const SipSpace& space, int n, std::uint64_t seed, bool parseval) {
  if (n < 1) throw std::invalid_argument("random_pasf: N must be >= 1");
  constexpr int kMaxRetries = 20;
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(attempt)));
    try {
      if (parseval && space.p() == 2.0) {
        Pasf f = orthonormal_row_pasf(space, n, rng);
        return f;
      }
      std::vector<Vector> omega, tau;
      omega.reserve(static_cast<std::size_t>(n));
      tau.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) omega.push_back(random_vector(space, rng));
      for (int i = 0; i < n; ++i) tau.push_back(random_vector(space, rng));
      Pasf f(space, std::move(omega), std::move(tau));
      const Inversion inv = invert(frame_operator(f));  // throws on singular S
      if (inv.condition > kConditionCertifyThreshold)
        throw NotInvertibleError(inv.condition, "condition above certification threshold");
      return parseval ? parsevalize(f) : f;
    } catch (const NotInvertibleError& e) {
      last_failure = e.what();
    } catch (const GenerationError& e) {
      last_failure = e.what();
    }
  }
  throw GenerationError("random_pasf: no certified frame within " +
                        std::to_string(kMaxRetries) + " retries (" + last_failure + ")");
}

}  // namespace pasflab
