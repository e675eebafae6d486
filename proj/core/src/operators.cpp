#include "pasflab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "pasflab/detail/parallel.hpp"
#include "pasflab/rng.hpp"

namespace pasflab {

namespace {

constexpr double kPivotRelThreshold = 1e-12;

void require_square(const LinearOperator& a, const char* what) {
  if (!a.is_square() || !(a.domain() == a.codomain()))
    throw std::invalid_argument(std::string(what) + ": operator must be square on one space");
}

// Raw matvec on coordinate arrays (no space checks).
std::vector<Cplx> matvec(const std::vector<Cplx>& m, int rows, int cols,
                         const std::vector<Cplx>& x) {
  std::vector<Cplx> y(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    Cplx acc{0.0, 0.0};
    const std::size_t base = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols);
    for (int c = 0; c < cols; ++c) acc += m[base + static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

// y^T = x^T M, i.e. y_c = sum_r M_rc x_r: the transposed action without
// forming the transpose.
std::vector<Cplx> matvec_transposed(const std::vector<Cplx>& m, int rows, int cols,
                                    const std::vector<Cplx>& x) {
  std::vector<Cplx> y(static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols);
    const Cplx xr = x[static_cast<std::size_t>(r)];
    if (xr == Cplx{0.0, 0.0}) continue;
    for (int c = 0; c < cols; ++c) y[static_cast<std::size_t>(c)] += m[base + static_cast<std::size_t>(c)] * xr;
  }
  return y;
}

}  // namespace

NotInvertibleError::NotInvertibleError(double failing_pivot, const std::string& detail)
    : std::runtime_error("operator not invertible" +
                         (detail.empty() ? std::string() : ": " + detail) +
                         " (pivot magnitude " + std::to_string(failing_pivot) + ")"),
      failing_pivot_(failing_pivot) {}

LinearOperator::LinearOperator(std::vector<Cplx> entries, SipSpace domain, SipSpace codomain)
    : entries_(std::move(entries)), domain_(domain), codomain_(codomain) {
  if (domain_.field() != codomain_.field())
    throw std::invalid_argument("LinearOperator: domain and codomain field mismatch");
  const std::size_t expect =
      static_cast<std::size_t>(domain_.dim()) * static_cast<std::size_t>(codomain_.dim());
  if (entries_.size() != expect)
    throw std::invalid_argument("LinearOperator: entry count does not match rows*cols");
  for (const Cplx& z : entries_)
    if (!is_finite(z)) throw std::invalid_argument("LinearOperator: non-finite entry");
}

LinearOperator LinearOperator::identity(const SipSpace& space) {
  std::vector<Cplx> e(static_cast<std::size_t>(space.dim()) * static_cast<std::size_t>(space.dim()));
  for (int i = 0; i < space.dim(); ++i)
    e[static_cast<std::size_t>(i) * static_cast<std::size_t>(space.dim()) + static_cast<std::size_t>(i)] = {1.0, 0.0};
  return LinearOperator(std::move(e), space, space);
}

LinearOperator LinearOperator::zero(const SipSpace& domain, const SipSpace& codomain) {
  std::vector<Cplx> e(static_cast<std::size_t>(domain.dim()) * static_cast<std::size_t>(codomain.dim()));
  return LinearOperator(std::move(e), domain, codomain);
}

double LinearOperator::inf_norm() const {
  double best = 0.0;
  for (int r = 0; r < rows(); ++r) {
    double s = 0.0;
    for (int c = 0; c < cols(); ++c) s += std::abs(at(r, c));
    best = std::max(best, s);
  }
  return best;
}

double LinearOperator::max_entry() const {
  double best = 0.0;
  for (const Cplx& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

Vector apply(const LinearOperator& a, const Vector& x) {
  if (!(x.space() == a.domain()))
    throw std::invalid_argument("apply: x does not live in the operator's domain");
  return Vector(matvec(a.entries(), a.rows(), a.cols(), x.coords()), a.codomain());
}

LinearOperator matmul(const LinearOperator& a, const LinearOperator& b) {
  if (!(b.codomain() == a.domain()))
    throw std::invalid_argument("matmul: inner spaces do not match");
  const int m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<Cplx> out(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < k; ++j) {
      const Cplx arj = a.at(r, j);
      if (arj == Cplx{0.0, 0.0}) continue;
      for (int c = 0; c < n; ++c)
        out[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)] += arj * b.at(j, c);
    }
  return LinearOperator(std::move(out), b.domain(), a.codomain());
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw std::invalid_argument("operator+: shapes do not match");
  std::vector<Cplx> out(a.entries());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.entries()[i];
  return LinearOperator(std::move(out), a.domain(), a.codomain());
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw std::invalid_argument("operator-: shapes do not match");
  std::vector<Cplx> out(a.entries());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.entries()[i];
  return LinearOperator(std::move(out), a.domain(), a.codomain());
}

LinearOperator scale(Cplx lambda, const LinearOperator& a) {
  std::vector<Cplx> out(a.entries());
  for (Cplx& z : out) z *= lambda;
  return LinearOperator(std::move(out), a.domain(), a.codomain());
}

LinearOperator transpose(const LinearOperator& a) {
  std::vector<Cplx> out(a.entries().size());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      out[static_cast<std::size_t>(c) * static_cast<std::size_t>(a.rows()) + static_cast<std::size_t>(r)] = a.at(r, c);
  return LinearOperator(std::move(out), a.codomain(), a.domain());
}

LinearOperator conjugate_transpose(const LinearOperator& a) {
  std::vector<Cplx> out(a.entries().size());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      out[static_cast<std::size_t>(c) * static_cast<std::size_t>(a.rows()) + static_cast<std::size_t>(r)] = std::conj(a.at(r, c));
  return LinearOperator(std::move(out), a.codomain(), a.domain());
}

double max_entry_diff(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw std::invalid_argument("max_entry_diff: shapes do not match");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

Inversion invert(const LinearOperator& a, bool refine) {
  require_square(a, "invert");
  const int n = a.rows();
  const double anorm = a.inf_norm();
  const double threshold = kPivotRelThreshold * anorm;
  if (anorm == 0.0) throw NotInvertibleError(0.0, "zero operator");

  // Gauss-Jordan on [W | X] with partial pivoting; X starts as I.
  std::vector<Cplx> w(a.entries());
  LinearOperator x = LinearOperator::identity(a.domain());
  auto wat = [&](int r, int c) -> Cplx& {
    return w[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)];
  };

  for (int col = 0; col < n; ++col) {
    int pivot_row = col;
    double pivot_mag = std::abs(wat(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double m = std::abs(wat(r, col));
      if (m > pivot_mag) {
        pivot_mag = m;
        pivot_row = r;
      }
    }
    if (!(pivot_mag > threshold)) throw NotInvertibleError(pivot_mag);
    if (pivot_row != col) {
      for (int c = 0; c < n; ++c) std::swap(wat(pivot_row, c), wat(col, c));
      for (int c = 0; c < n; ++c) std::swap(x.at(pivot_row, c), x.at(col, c));
    }
    const Cplx inv_pivot = Cplx{1.0, 0.0} / wat(col, col);
    for (int c = 0; c < n; ++c) wat(col, c) *= inv_pivot;
    for (int c = 0; c < n; ++c) x.at(col, c) *= inv_pivot;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Cplx f = wat(r, col);
      if (f == Cplx{0.0, 0.0}) continue;
      for (int c = 0; c < n; ++c) wat(r, c) -= f * wat(col, c);
      for (int c = 0; c < n; ++c) x.at(r, c) -= f * x.at(col, c);
    }
  }

  if (refine) {
    // One Newton correction X <- X(2I - AX).
    LinearOperator ax = matmul(a, x);
    LinearOperator corr = scale({2.0, 0.0}, LinearOperator::identity(a.domain())) - ax;
    x = matmul(x, corr);
  }

  const double condition = anorm * x.inf_norm();
  return Inversion{std::move(x), condition};
}

Vector generalized_adjoint_apply(const LinearOperator& a, const Vector& y) {
  require_square(a, "generalized_adjoint_apply");
  if (!(y.space() == a.domain()))
    throw std::invalid_argument("generalized_adjoint_apply: y does not live in the operator's space");
  const DualVector jy = duality_map(y);
  std::vector<Cplx> g = matvec_transposed(a.entries(), a.rows(), a.cols(), jy.coords());
  if (y.space().field() == Field::real)
    for (Cplx& z : g) z = {z.real(), 0.0};
  return riesz_representer(DualVector(std::move(g), y.space()));
}

AdjointMap::AdjointMap(LinearOperator base)
    : base_(std::move(base)), transposed_(transpose(base_)) {
  require_square(base_, "AdjointMap");
}

Vector AdjointMap::operator()(const Vector& y) const {
  if (!(y.space() == base_.domain()))
    throw std::invalid_argument("AdjointMap: y does not live in the operator's space");
  const DualVector jy = duality_map(y);
  std::vector<Cplx> g =
      matvec(transposed_.entries(), transposed_.rows(), transposed_.cols(), jy.coords());
  if (y.space().field() == Field::real)
    for (Cplx& z : g) z = {z.real(), 0.0};
  return riesz_representer(DualVector(std::move(g), y.space()));
}

namespace {

struct IterOutcome {
  double ratio = 0.0;
  std::vector<Cplx> witness;  // unit in l^{p_in}
  bool converged = true;
};

// One run of the mixed-norm power iteration from a given start.
IterOutcome pnorm_iterate(const LinearOperator& a, double p_in, double p_out,
                          std::vector<Cplx> x0) {
  constexpr int kMaxIters = 500;
  constexpr double kImprove = 1e-12;
  const double q_in = p_in / (p_in - 1.0);
  const int rows = a.rows(), cols = a.cols();

  IterOutcome out;
  double n0 = lp_norm(x0, p_in);
  if (n0 == 0.0) return out;
  for (Cplx& z : x0) z /= n0;
  out.witness = x0;

  std::vector<Cplx> x = std::move(x0);
  out.converged = false;
  for (int it = 0; it < kMaxIters; ++it) {
    std::vector<Cplx> ax = matvec(a.entries(), rows, cols, x);
    const double r = lp_norm(ax, p_out);
    if (r > out.ratio) {
      out.ratio = r;
      out.witness = x;
    }
    if (r == 0.0) {
      out.converged = true;  // start lay in the kernel; nothing to climb
      break;
    }
    // Dual coordinates of ||.||_{p_out} at Ax, pulled back through A.
    const double wz = p_out == 2.0 ? 1.0 : std::pow(r, p_out - 2.0);
    for (Cplx& z : ax) z = conj_abs_pow(z, p_out - 2.0) / wz;
    std::vector<Cplx> g = matvec_transposed(a.entries(), rows, cols, ax);
    // Inverse duality map of l^{p_in} = duality map with the conjugate
    // exponent, then renormalize to the unit sphere.
    const double ng = lp_norm(g, q_in);
    if (ng == 0.0) break;
    const double wq = q_in == 2.0 ? 1.0 : std::pow(ng, q_in - 2.0);
    std::vector<Cplx> xn(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) xn[i] = conj_abs_pow(g[i], q_in - 2.0) / wq;
    const double nxn = lp_norm(xn, p_in);
    if (nxn == 0.0) break;
    for (Cplx& z : xn) z /= nxn;
    std::vector<Cplx> axn = matvec(a.entries(), rows, cols, xn);
    const double rn = lp_norm(axn, p_out);
    if (rn > out.ratio) {
      out.ratio = rn;
      out.witness = xn;
    }
    if (rn <= r + kImprove) {
      out.converged = true;
      break;
    }
    x = std::move(xn);
  }
  return out;
}

}  // namespace

PnormEstimate pnorm_estimate(const LinearOperator& a, double p_in, double p_out,
                             int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("pnorm_estimate: restarts must be >= 1");
  if (!(p_in > 1.0) || !(p_out > 1.0))
    throw std::invalid_argument("pnorm_estimate: exponents must exceed 1");
  const SipSpace in_space(a.cols(), p_in, a.domain().field());
  const int cols = a.cols();

  // Start 0: the best standard basis vector.  This pins diagonal operators
  // to max|d_i| exactly and costs one pass over the matrix.
  std::vector<Cplx> basis_best(static_cast<std::size_t>(cols));
  {
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < cols; ++i) {
      std::vector<Cplx> col(static_cast<std::size_t>(a.rows()));
      for (int r = 0; r < a.rows(); ++r) col[static_cast<std::size_t>(r)] = a.at(r, i);
      const double r = lp_norm(col, p_out);
      if (r > best) {
        best = r;
        best_i = i;
      }
    }
    basis_best[static_cast<std::size_t>(best_i)] = {1.0, 0.0};
  }

  std::vector<IterOutcome> runs(static_cast<std::size_t>(restarts));
  detail::parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t k) {
    std::vector<Cplx> start;
    if (k == 0) {
      start = basis_best;
    } else {
      CounterRng rng(CounterRng::derive(seed, k));
      start.resize(static_cast<std::size_t>(cols));
      for (Cplx& z : start) z = rng.scalar(in_space.field());
    }
    runs[k] = pnorm_iterate(a, p_in, p_out, std::move(start));
  });

  // Deterministic merge in restart order.
  PnormEstimate est{0.0, Vector::zero(in_space), true, restarts};
  const IterOutcome* best = nullptr;
  for (const IterOutcome& run : runs) {
    if (run.witness.empty()) continue;
    if (best == nullptr || run.ratio > best->ratio) best = &run;
  }
  if (best == nullptr) return est;  // zero matrix: bound 0 with zero witness
  for (const IterOutcome& run : runs) est.converged = est.converged && run.converged;

  // Re-evaluate at the witness so bound and witness agree by construction.
  std::vector<Cplx> w = best->witness;
  std::vector<Cplx> aw = matvec(a.entries(), a.rows(), a.cols(), w);
  est.lower_bound = lp_norm(aw, p_out) / lp_norm(w, p_in);
  est.witness = Vector(std::move(w), in_space);
  return est;
}

PnormEstimate pnorm_iterate_from(const LinearOperator& a, double p_in, double p_out,
                                 const Vector& start) {
  if (!(p_in > 1.0) || !(p_out > 1.0))
    throw std::invalid_argument("pnorm_iterate_from: exponents must exceed 1");
  if (start.dim() != a.cols())
    throw std::invalid_argument("pnorm_iterate_from: start has the wrong dimension");
  const SipSpace in_space(a.cols(), p_in, a.domain().field());
  IterOutcome run = pnorm_iterate(a, p_in, p_out, start.coords());
  PnormEstimate est{0.0, Vector::zero(in_space), run.converged, 1};
  if (run.witness.empty()) return est;
  std::vector<Cplx> w = run.witness;
  std::vector<Cplx> aw = matvec(a.entries(), a.rows(), a.cols(), w);
  est.lower_bound = lp_norm(aw, p_out) / lp_norm(w, p_in);
  est.witness = Vector(std::move(w), in_space);
  return est;
}

namespace {

// Rayleigh quotient power iteration on a PSD matrix (flat, n x n).
double psd_power_iteration(const std::vector<Cplx>& m, int n, CounterRng& rng) {
  constexpr int kMaxIters = 20000;
  constexpr double kTol = 1e-13;
  double best = 0.0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Cplx> v(static_cast<std::size_t>(n));
    for (Cplx& z : v) z = {rng.uniform_pm1(), rng.uniform_pm1()};
    double prev = -1.0;
    for (int it = 0; it < kMaxIters; ++it) {
      std::vector<Cplx> mv = matvec(m, n, n, v);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i) {
        num += (std::conj(v[static_cast<std::size_t>(i)]) * mv[static_cast<std::size_t>(i)]).real();
        den += std::norm(v[static_cast<std::size_t>(i)]);
      }
      if (den == 0.0) break;
      const double rq = num / den;
      const double nv = lp_norm(mv, 2.0);
      if (nv == 0.0) {
        prev = 0.0;
        break;
      }
      for (Cplx& z : mv) z /= nv;
      v = std::move(mv);
      if (std::abs(rq - prev) <= kTol * std::max(1.0, std::abs(rq))) {
        prev = rq;
        break;
      }
      prev = rq;
    }
    best = std::max(best, prev);
  }
  return best;
}

}  // namespace

HermitianExtremes hermitian_part_extremes(const LinearOperator& a, std::uint64_t seed) {
  require_square(a, "hermitian_part_extremes");
  const int n = a.rows();
  std::vector<Cplx> h(a.entries().size());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      h[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)] =
          0.5 * (a.at(r, c) + std::conj(a.at(c, r)));

  double m = 0.0;
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c)
      s += std::abs(h[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)]);
    m = std::max(m, s);
  }
  if (m == 0.0) return {0.0, 0.0};

  // Spectral shifts keep both iterations on PSD matrices: H + mI has top
  // eigenvalue m + max_eig, and mI - H has top eigenvalue m - min_eig.
  std::vector<Cplx> up(h), down(h);
  for (std::size_t j = 0; j < down.size(); ++j) down[j] = -down[j];
  for (int i = 0; i < n; ++i) {
    const std::size_t di = static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    up[di] += m;
    down[di] += m;
  }

  CounterRng rng_up(CounterRng::derive(seed, 101));
  CounterRng rng_down(CounterRng::derive(seed, 202));
  HermitianExtremes out;
  out.max_eig = psd_power_iteration(up, n, rng_up) - m;
  out.min_eig = m - psd_power_iteration(down, n, rng_down);
  return out;
}

LinearOperator inverse_sqrt_hpd(const LinearOperator& a) {
  require_square(a, "inverse_sqrt_hpd");
  constexpr int kMaxIters = 60;
  // Denman-Beavers: Y -> A^1/2, Z -> A^-1/2, quadratically for HPD input.
  LinearOperator y = a;
  LinearOperator z = LinearOperator::identity(a.domain());
  for (int it = 0; it < kMaxIters; ++it) {
    const LinearOperator zi = invert(z).inverse;
    const LinearOperator yi = invert(y).inverse;
    LinearOperator yn = scale({0.5, 0.0}, y + zi);
    LinearOperator zn = scale({0.5, 0.0}, z + yi);
    const double delta = max_entry_diff(yn, y);
    y = std::move(yn);
    z = std::move(zn);
    if (delta <= 1e-15 * std::max(1.0, y.max_entry())) break;
  }
  return z;
}

}  // namespace pasflab
