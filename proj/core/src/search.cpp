#include "pasflab/search.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pasflab/detail/parallel.hpp"
#include "pasflab/rng.hpp"
#include "pasflab/sip.hpp"

namespace pasflab {

namespace {

constexpr double kHypothesisSlack = -1e-10;   // tolerance when enforcing h >= 0
constexpr double kViolationThreshold = -1e-8; // h below this counts as a violation

void validate_config(const SearchConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("search: restarts must be >= 1");
  if (cfg.max_iters < 0) throw std::invalid_argument("search: max_iters must be >= 0");
  if (!(cfg.step_init > 0.0) || !(cfg.step_min > 0.0) || cfg.step_min > cfg.step_init)
    throw std::invalid_argument("search: need 0 < step_min <= step_init");
  if (!(cfg.diff_step > 0.0)) throw std::invalid_argument("search: diff_step must be > 0");
}

std::vector<std::uint64_t> enumerate_masks(int n, const SearchConfig& cfg) {
  std::vector<std::uint64_t> masks;
  if (n <= 12) {
    masks.resize(std::size_t{1} << n);
    for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i;
  } else {
    if (cfg.subset_sample < 1)
      throw std::invalid_argument("search: subset_sample must be >= 1 when N > 12");
    const std::uint64_t full = IndexSet::full(n).bits();
    CounterRng rng(CounterRng::derive(cfg.seed, 0x5AB5E75));
    masks.reserve(static_cast<std::size_t>(cfg.subset_sample));
    for (int i = 0; i < cfg.subset_sample; ++i) masks.push_back(rng.next_u64() & full);
  }
  return masks;
}

struct StreamResult {
  double obj = std::numeric_limits<double>::infinity();
  std::vector<Cplx> x;
  double hyp = 0.0;
  bool hyp_ok = false;
  bool valid = false;
  std::vector<std::pair<int, double>> trace;
};

// One projected-gradient descent on the unit sphere of the frame space.
// minimize_hypothesis = false: objective is ratio(M, x); the hypothesis
// constraint applies when cfg.restrict_to_hypothesis.  true: objective is
// the normalized hypothesis value itself (violation hunting).
StreamResult descend_stream(const PasfEvaluator& ev, const IndexSet& m,
                            const SearchConfig& cfg, std::uint64_t stream_seed,
                            bool minimize_hypothesis) {
  const SipSpace& sp = ev.frame().space();
  const int d = sp.dim();
  const bool cplx = sp.field() == Field::complex;
  const bool constrain = !minimize_hypothesis && cfg.restrict_to_hypothesis;
  CounterRng rng(stream_seed);
  const PasfEvaluator::SubsetContext sc = ev.subset_context(m);

  auto normalized = [&](std::vector<Cplx> c) -> std::vector<Cplx> {
    const double nrm = lp_norm(c, sp.p());
    if (!(nrm > 1e-12)) return {};
    for (Cplx& z : c) z /= nrm;
    return c;
  };
  auto hyp_of = [&](const PasfEvaluator::Probe& pr) {
    return ev.hypothesis(sc, pr) / pr.norm_sq;
  };
  auto obj_of = [&](const PasfEvaluator::Probe& pr) {
    return minimize_hypothesis ? hyp_of(pr) : ev.ratio(m, pr);
  };

  StreamResult res;

  // Sample a start; under the hypothesis restriction keep drawing until a
  // feasible one appears (or give up and report an invalid stream).
  std::vector<Cplx> x;
  double fx = 0.0;
  bool have_start = false;
  for (int attempt = 0; attempt < 16 && !have_start; ++attempt) {
    std::vector<Cplx> cand(static_cast<std::size_t>(d));
    for (Cplx& z : cand) z = rng.scalar(sp.field());
    cand = normalized(std::move(cand));
    if (cand.empty()) continue;
    const PasfEvaluator::Probe pr = ev.probe(Vector(cand, sp));
    const double val = obj_of(pr);
    if (!std::isfinite(val)) continue;
    if (constrain && hyp_of(pr) < kHypothesisSlack) continue;
    x = std::move(cand);
    fx = val;
    have_start = true;
  }
  if (!have_start) return res;
  res.trace.emplace_back(0, fx);

  const int comps = cplx ? 2 * d : d;
  auto shift = [&](std::vector<Cplx>& c, int comp, double amount) {
    const int i = cplx ? comp / 2 : comp;
    if (cplx && comp % 2 == 1)
      c[static_cast<std::size_t>(i)] += Cplx{0.0, amount};
    else
      c[static_cast<std::size_t>(i)] += Cplx{amount, 0.0};
  };

  double step = cfg.step_init;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    // Central finite-difference gradient; the objective is scale-invariant,
    // so perturbed points need no renormalization.
    std::vector<double> grad(static_cast<std::size_t>(comps), 0.0);
    double gnorm_sq = 0.0;
    for (int c = 0; c < comps; ++c) {
      std::vector<Cplx> plus = x, minus = x;
      shift(plus, c, cfg.diff_step);
      shift(minus, c, -cfg.diff_step);
      const double fp = obj_of(ev.probe(Vector(std::move(plus), sp)));
      const double fm = obj_of(ev.probe(Vector(std::move(minus), sp)));
      grad[static_cast<std::size_t>(c)] = (fp - fm) / (2.0 * cfg.diff_step);
      gnorm_sq += grad[static_cast<std::size_t>(c)] * grad[static_cast<std::size_t>(c)];
    }
    const double gnorm = std::sqrt(gnorm_sq);
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) break;

    bool accepted = false;
    while (step >= cfg.step_min) {
      std::vector<Cplx> cand = x;
      for (int c = 0; c < comps; ++c)
        shift(cand, c, -step * grad[static_cast<std::size_t>(c)] / gnorm);
      cand = normalized(std::move(cand));
      if (!cand.empty()) {
        const PasfEvaluator::Probe pr = ev.probe(Vector(cand, sp));
        const double val = obj_of(pr);
        if (std::isfinite(val) && val < fx &&
            (!constrain || hyp_of(pr) >= kHypothesisSlack)) {
          x = std::move(cand);
          fx = val;
          res.trace.emplace_back(iter, fx);
          step = std::min(step * 2.0, cfg.step_init);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }

  const PasfEvaluator::Probe final_pr = ev.probe(Vector(x, sp));
  res.obj = fx;
  res.hyp = hyp_of(final_pr);
  res.hyp_ok = res.hyp >= kHypothesisSlack;
  res.x = std::move(x);
  res.valid = true;
  return res;
}

}  // namespace

SearchOutcome minimize_ratio(const Pasf& f, const SearchConfig& config) {
  validate_config(config);
  const PasfEvaluator ev(f);
  if (ev.parseval_residual() > kParsevalTolerance)
    throw NotParsevalError(ev.parseval_residual());

  const int n = f.size();
  const std::vector<std::uint64_t> masks = enumerate_masks(n, config);
  const std::size_t restarts = static_cast<std::size_t>(config.restarts);
  const std::size_t total = masks.size() * restarts;
  std::vector<StreamResult> slots(total);
  detail::parallel_for(total, [&](std::size_t idx) {
    const std::size_t si = idx / restarts;
    const int r = static_cast<int>(idx % restarts);
    const IndexSet m(masks[si], n);
    slots[idx] = descend_stream(
        ev, m, config,
        CounterRng::derive(config.seed, masks[si], static_cast<std::uint64_t>(r)),
        /*minimize_hypothesis=*/false);
  });

  // Deterministic merge: strictly better objective wins; under the
  // hypothesis restriction feasible streams outrank infeasible ones.  Ties
  // keep the earliest (subset, restart) in enumeration order.
  const StreamResult* best = nullptr;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const StreamResult& s = slots[i];
    if (!s.valid) continue;
    bool wins = false;
    if (!best)
      wins = true;
    else if (config.restrict_to_hypothesis && s.hyp_ok != best->hyp_ok)
      wins = s.hyp_ok;
    else
      wins = s.obj < best->obj;
    if (wins) {
      best = &s;
      best_idx = i;
    }
  }
  if (!best) throw std::runtime_error("minimize_ratio: every descent stream failed to start");

  return SearchOutcome{best->obj,
                       Vector(best->x, f.space()),
                       IndexSet(masks[best_idx / restarts], n),
                       best->hyp,
                       best->hyp_ok,
                       best->trace,
                       static_cast<int>(masks.size())};
}

std::optional<HypothesisViolation> find_hypothesis_violation(const Pasf& f,
                                                             const SearchConfig& config) {
  validate_config(config);
  const PasfEvaluator ev(f);

  const int n = f.size();
  const std::vector<std::uint64_t> masks = enumerate_masks(n, config);
  const std::size_t restarts = static_cast<std::size_t>(config.restarts);
  const std::size_t total = masks.size() * restarts;
  std::vector<StreamResult> slots(total);
  const std::uint64_t family = CounterRng::derive(config.seed, 0xF00D);
  detail::parallel_for(total, [&](std::size_t idx) {
    const std::size_t si = idx / restarts;
    const int r = static_cast<int>(idx % restarts);
    const IndexSet m(masks[si], n);
    slots[idx] = descend_stream(
        ev, m, config,
        CounterRng::derive(family, masks[si], static_cast<std::uint64_t>(r)),
        /*minimize_hypothesis=*/true);
  });

  for (std::size_t i = 0; i < total; ++i) {
    const StreamResult& s = slots[i];
    if (s.valid && s.obj < kViolationThreshold)
      return HypothesisViolation{IndexSet(masks[i / restarts], n),
                                 Vector(s.x, f.space()), s.obj};
  }
  return std::nullopt;
}

}  // namespace pasflab
