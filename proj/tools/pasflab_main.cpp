// pasflab: construct, inspect, and stress-test p-approximate Schauder frame
// pairs on finite-dimensional l^p spaces.
//
// Subcommands:
//   gen      generate a random (optionally Parseval) frame pair -> JSON file
//   analyze  norm/condition/certification report for a frame file
//   verify   sweep the reconstruction identities and the 3/4 bound
//   search   adversarially minimize the bound ratio or hunt for hypothesis
//            violations
//
// Exit codes: 0 success (all checks passed), 1 invariant failure found by
// verify, 2 usage or input-format error, 3 generation failure, 4 structural
// precondition failure (frame operator not Parseval / not certifiably
// invertible where required).
//
// Reports are deterministic for fixed arguments: no timestamps, fixed key
// order, shortest round-trip number formatting, and thread-count-independent
// numerics (PASFLAB_THREADS only changes wall time).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pasflab/detail/parallel.hpp"
#include "pasflab/frame_io.hpp"
#include "pasflab/frames.hpp"
#include "pasflab/identities.hpp"
#include "pasflab/index_set.hpp"
#include "pasflab/rng.hpp"
#include "pasflab/search.hpp"
#include "pasflab/sip.hpp"
#include "pasflab/version.hpp"

namespace {

using pasflab::BoundResult;
using pasflab::CounterRng;
using pasflab::Cplx;
using pasflab::Field;
using pasflab::FrameReport;
using pasflab::IdentityResult;
using pasflab::IndexSet;
using pasflab::Pasf;
using pasflab::PasfEvaluator;
using pasflab::SipSpace;
using pasflab::Vector;
using ordered_json = nlohmann::ordered_json;

constexpr int kMaxDim = 16;
constexpr int kMaxN = 64;
constexpr int kMaxExhaustiveN = 24;
constexpr int kMaxRecordedFailures = 8;
constexpr double kRatioFloor = 0.75 - 1e-6;

struct CommonOpts {
  std::string out;
  bool human = false;
  std::uint64_t seed = 0;
};

void check_envelope(const SipSpace& space, int n) {
  if (space.dim() > kMaxDim)
    throw std::invalid_argument("frame dimension exceeds the supported envelope (dim <= 16)");
  if (n > kMaxN)
    throw std::invalid_argument("frame size exceeds the supported envelope (N <= 64)");
}

ordered_json cplx_json(const Cplx& z, Field field) {
  if (field == Field::real) return z.real();
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json coords_json(const std::vector<Cplx>& coords, Field field) {
  ordered_json arr = ordered_json::array();
  for (const Cplx& z : coords) arr.push_back(cplx_json(z, field));
  return arr;
}

ordered_json members_json(const IndexSet& m) {
  ordered_json arr = ordered_json::array();
  for (int k : m.members()) arr.push_back(k);
  return arr;
}

ordered_json frame_summary_json(const Pasf& f) {
  ordered_json j;
  j["p"] = f.space().p();
  j["dim"] = f.space().dim();
  j["N"] = f.size();
  j["field"] = pasflab::to_string(f.space().field());
  return j;
}

ordered_json manifest(const char* command, const std::string& input, const Pasf* f) {
  ordered_json j;
  j["tool"] = "pasflab";
  j["version"] = PASFLAB_VERSION;
  j["command"] = command;
  if (!input.empty()) j["input"] = input;
  if (f) j["frame"] = frame_summary_json(*f);
  return j;
}

ordered_json certification_json(const FrameReport& rep) {
  ordered_json j;
  j["c_estimate"] = rep.c_estimate;
  j["d_estimate"] = rep.d_estimate;
  if (rep.a_estimate) j["a_estimate"] = *rep.a_estimate;
  if (rep.b_estimate) j["b_estimate"] = *rep.b_estimate;
  j["parseval_residual"] = rep.parseval_residual;
  if (std::isfinite(rep.condition_s))
    j["condition"] = rep.condition_s;
  else
    j["condition"] = "singular";
  j["certified"] = rep.certified;
  return j;
}

int emit_report(const ordered_json& report, const CommonOpts& common,
                const std::string& human_text) {
  const std::string payload = report.dump(2) + "\n";
  if (!common.out.empty()) {
    std::ofstream out(common.out, std::ios::binary);
    if (!out) throw pasflab::FrameIoError("cannot open \"" + common.out + "\" for writing");
    out << payload;
    if (!out) throw pasflab::FrameIoError("failed writing \"" + common.out + "\"");
  }
  if (common.human)
    std::cout << human_text;
  else
    std::cout << payload;
  return 0;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// gen

struct GenOpts {
  double p = 2.0;
  int dim = 0;
  int n = 0;
  std::string field = "real";
  bool parseval = false;
  CommonOpts common;
};

int run_gen(const GenOpts& o) {
  const SipSpace space(o.dim, o.p, pasflab::field_from_string(o.field));
  check_envelope(space, o.n);
  if (o.common.out.empty())
    throw std::invalid_argument("gen requires --out <frame.json>");
  const Pasf f = pasflab::random_pasf(space, o.n, o.common.seed, o.parseval);
  pasflab::save_frame(f, o.common.out);
  const FrameReport rep =
      pasflab::certify(f, 4, CounterRng::derive(o.common.seed, 0xCE7));

  ordered_json report = manifest("gen", "", &f);
  report["params"] = {{"seed", o.common.seed}, {"parseval", o.parseval}};
  report["written"] = o.common.out;
  report["certification"] = certification_json(rep);

  std::ostringstream human;
  human << "wrote " << o.common.out << ": p=" << fmt(o.p) << " dim=" << o.dim
        << " N=" << o.n << " field=" << o.field << "\n"
        << "  c=" << fmt(rep.c_estimate) << " d=" << fmt(rep.d_estimate)
        << " parseval_residual=" << fmt(rep.parseval_residual)
        << (rep.certified ? " certified" : " NOT certified") << "\n";
  // The frame file itself is the primary output; the report goes to stdout.
  CommonOpts stdout_only;
  stdout_only.human = o.common.human;
  return emit_report(report, stdout_only, human.str());
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOpts {
  std::string in;
  int restarts = 8;
  CommonOpts common;
};

int run_analyze(const AnalyzeOpts& o) {
  const Pasf f = pasflab::load_frame(o.in);
  check_envelope(f.space(), f.size());
  if (o.restarts < 1) throw std::invalid_argument("--restarts must be >= 1");
  const FrameReport rep = pasflab::certify(f, o.restarts, o.common.seed);

  ordered_json report = manifest("analyze", o.in, &f);
  report["params"] = {{"seed", o.common.seed}, {"restarts", o.restarts}};
  report["certification"] = certification_json(rep);
  ordered_json omega_norms = ordered_json::array();
  ordered_json tau_norms = ordered_json::array();
  for (int i = 0; i < f.size(); ++i) {
    omega_norms.push_back(pasflab::norm(f.omega()[static_cast<std::size_t>(i)]));
    tau_norms.push_back(pasflab::norm(f.tau()[static_cast<std::size_t>(i)]));
  }
  report["vector_norms"] = {{"omega", omega_norms}, {"tau", tau_norms}};
  ordered_json diag = ordered_json::array();
  for (int i = 0; i < f.size(); ++i)
    diag.push_back(cplx_json(
        pasflab::sip_eval(f.tau()[static_cast<std::size_t>(i)],
                          f.omega()[static_cast<std::size_t>(i)]),
        f.space().field()));
  report["gram_diagonal"] = diag;

  std::ostringstream human;
  human << "frame " << o.in << ": p=" << fmt(f.space().p()) << " dim=" << f.space().dim()
        << " N=" << f.size() << " field=" << pasflab::to_string(f.space().field()) << "\n"
        << "  analysis bound c ~ " << fmt(rep.c_estimate) << ", synthesis bound d ~ "
        << fmt(rep.d_estimate) << "\n";
  if (rep.a_estimate)
    human << "  frame bounds (p=2): a ~ " << fmt(*rep.a_estimate) << ", b ~ "
          << fmt(*rep.b_estimate) << "\n";
  human << "  parseval residual " << fmt(rep.parseval_residual) << ", condition "
        << (std::isfinite(rep.condition_s) ? fmt(rep.condition_s) : std::string("singular"))
        << (rep.certified ? ", certified" : ", NOT certified") << "\n";
  return emit_report(report, o.common, human.str());
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::string in;
  std::string subsets = "auto";
  int trials = 5;
  double tol_rel = 1e-7;
  CommonOpts common;
};

struct FailureRec {
  std::uint64_t mask = 0;
  std::vector<Cplx> x;
  bool has_x = false;
  double residual = 0.0;
  double scale = 1.0;
  double threshold = 0.0;
  double extra = 0.0;  // suite-specific (e.g. ratio or hypothesis value)
};

ordered_json failure_json(const FailureRec& rec, int n, Field field) {
  const IndexSet m(rec.mask, n);
  ordered_json j;
  j["m_members"] = members_json(m);
  j["m_bitmask"] = m.to_hex();
  if (rec.has_x) j["x"] = coords_json(rec.x, field);
  j["residual"] = rec.residual;
  j["scale"] = rec.scale;
  j["threshold"] = rec.threshold;
  return j;
}

struct SubsetStats {
  // lemma
  bool lemma_ran = false;
  bool lemma_pass = true;
  double lemma_max_rel = 0.0;
  // general identity
  int gen_cases = 0;
  double gen_max_rel = 0.0;
  double gen_alt_max_rel = 0.0;
  std::vector<FailureRec> gen_fail;
  // parseval identity
  int par_cases = 0;
  double par_max_rel = 0.0;
  double par_alt_max_rel = 0.0;
  std::vector<FailureRec> par_fail;
  // operator identity
  bool op_ran = false;
  bool op_pass = true;
  double op_residual = 0.0;
  // lower bound
  int bound_cases = 0;
  int hyp_hold_count = 0;
  double min_ratio_all = std::numeric_limits<double>::infinity();
  double min_ratio_hyp = std::numeric_limits<double>::infinity();
  double max_sym_rel = 0.0;
  std::vector<FailureRec> bound_fail;
};

std::vector<std::uint64_t> verify_masks(int n, const std::string& mode, std::uint64_t seed) {
  std::vector<std::uint64_t> masks;
  auto exhaustive = [&]() {
    if (n > kMaxExhaustiveN)
      throw std::invalid_argument("exhaustive subsets require N <= 24");
    masks.resize(std::size_t{1} << n);
    for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i;
  };
  auto sampled = [&](int count) {
    if (count < 1) throw std::invalid_argument("--subsets count must be >= 1");
    const std::uint64_t full = IndexSet::full(n).bits();
    CounterRng rng(CounterRng::derive(seed, 0x5B5));
    masks.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) masks.push_back(rng.next_u64() & full);
  };
  if (mode == "auto") {
    if (n <= 8)
      exhaustive();
    else
      sampled(64);
  } else if (mode == "exhaustive") {
    exhaustive();
  } else {
    int count = 0;
    try {
      std::size_t pos = 0;
      count = std::stoi(mode, &pos);
      if (pos != mode.size()) throw std::invalid_argument(mode);
    } catch (const std::exception&) {
      throw std::invalid_argument("--subsets must be \"auto\", \"exhaustive\", or a count");
    }
    sampled(count);
  }
  return masks;
}

void record_failure(std::vector<FailureRec>& sink, FailureRec rec) {
  if (static_cast<int>(sink.size()) < kMaxRecordedFailures) sink.push_back(std::move(rec));
}

int run_verify(const VerifyOpts& o) {
  const Pasf f = pasflab::load_frame(o.in);
  check_envelope(f.space(), f.size());
  if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (!(o.tol_rel > 0.0)) throw std::invalid_argument("--tol-rel must be > 0");

  const PasfEvaluator ev(f);  // NotInvertibleError -> precondition exit
  const int n = f.size();
  const double parseval_residual = ev.parseval_residual();
  const bool parseval = parseval_residual <= pasflab::kParsevalTolerance;
  // The operator lemma U + V = I needs the exact-complement precondition,
  // which only holds when S is the identity to within the lemma gate.
  const bool lemma_applicable = parseval_residual <= 1e-10;
  const double op_threshold = 1e-9 + 10.0 * parseval_residual;
  const double alt_gate = 1e-7;

  const std::vector<std::uint64_t> masks = verify_masks(n, o.subsets, o.common.seed);
  std::vector<SubsetStats> slots(masks.size());

  pasflab::detail::parallel_for(masks.size(), [&](std::size_t si) {
    const std::uint64_t mask = masks[si];
    const IndexSet m(mask, n);
    SubsetStats st;

    if (lemma_applicable) {
      st.lemma_ran = true;
      const auto s_m = pasflab::partial_frame_operator(f, m);
      const auto s_mc = pasflab::partial_frame_operator(f, m.complement());
      try {
        const IdentityResult lr = pasflab::lemma_uv_check(s_m, s_mc);
        st.lemma_pass = lr.passed;
        st.lemma_max_rel = lr.residual / lr.scale;
      } catch (const std::invalid_argument&) {
        st.lemma_pass = false;
        st.lemma_max_rel = std::numeric_limits<double>::infinity();
      }
    }

    if (parseval) {
      st.op_ran = true;
      st.op_residual = ev.operator_identity_residual(m);
      st.op_pass = st.op_residual <= op_threshold;
    }

    CounterRng rng(CounterRng::derive(o.common.seed, 0xA11CE, mask));
    for (int t = 0; t < o.trials; ++t) {
      const Vector x = pasflab::random_vector(f.space(), rng);

      const IdentityResult g = ev.general_identity(m, x, o.tol_rel);
      ++st.gen_cases;
      st.gen_max_rel = std::max(st.gen_max_rel, g.residual / g.scale);
      st.gen_alt_max_rel = std::max(st.gen_alt_max_rel, g.alt_path_residual / g.scale);
      if (!g.passed)
        record_failure(st.gen_fail, FailureRec{mask, x.coords(), true, g.residual,
                                               g.scale, o.tol_rel * g.scale, 0.0});

      if (!parseval) continue;

      const IdentityResult pi = ev.parseval_identity(m, x);
      ++st.par_cases;
      st.par_max_rel = std::max(st.par_max_rel, pi.residual / pi.scale);
      st.par_alt_max_rel = std::max(st.par_alt_max_rel, pi.alt_path_residual / pi.scale);
      if (!pi.passed || pi.alt_path_residual > alt_gate * pi.scale)
        record_failure(st.par_fail, FailureRec{mask, x.coords(), true, pi.residual,
                                               pi.scale,
                                               std::max(pi.tol, alt_gate) * pi.scale, 0.0});

      const BoundResult b = ev.bound(m, x);
      ++st.bound_cases;
      st.min_ratio_all = std::min(st.min_ratio_all, b.ratio);
      st.max_sym_rel = std::max(
          st.max_sym_rel,
          b.symmetric_form_residual / std::max(1.0, std::abs(b.q_value)));
      if (b.hypothesis_holds) {
        ++st.hyp_hold_count;
        st.min_ratio_hyp = std::min(st.min_ratio_hyp, b.ratio);
        if (b.ratio < kRatioFloor)
          record_failure(st.bound_fail, FailureRec{mask, x.coords(), true, b.ratio,
                                                   1.0, kRatioFloor,
                                                   b.hypothesis_value});
      }
    }
    slots[si] = std::move(st);
  });

  // Deterministic sequential merge.
  SubsetStats total;
  int lemma_subsets = 0, op_subsets = 0;
  bool lemma_pass = true, op_pass = true;
  double op_max_residual = 0.0;
  std::vector<FailureRec> lemma_fail, op_fail;
  for (std::size_t si = 0; si < slots.size(); ++si) {
    const SubsetStats& st = slots[si];
    if (st.lemma_ran) {
      ++lemma_subsets;
      total.lemma_max_rel = std::max(total.lemma_max_rel, st.lemma_max_rel);
      if (!st.lemma_pass) {
        lemma_pass = false;
        record_failure(lemma_fail,
                       FailureRec{masks[si], {}, false, st.lemma_max_rel, 1.0, 1e-10, 0.0});
      }
    }
    if (st.op_ran) {
      ++op_subsets;
      op_max_residual = std::max(op_max_residual, st.op_residual);
      if (!st.op_pass) {
        op_pass = false;
        record_failure(op_fail,
                       FailureRec{masks[si], {}, false, st.op_residual, 1.0, op_threshold, 0.0});
      }
    }
    total.gen_cases += st.gen_cases;
    total.gen_max_rel = std::max(total.gen_max_rel, st.gen_max_rel);
    total.gen_alt_max_rel = std::max(total.gen_alt_max_rel, st.gen_alt_max_rel);
    for (const FailureRec& r : st.gen_fail) record_failure(total.gen_fail, r);
    total.par_cases += st.par_cases;
    total.par_max_rel = std::max(total.par_max_rel, st.par_max_rel);
    total.par_alt_max_rel = std::max(total.par_alt_max_rel, st.par_alt_max_rel);
    for (const FailureRec& r : st.par_fail) record_failure(total.par_fail, r);
    total.bound_cases += st.bound_cases;
    total.hyp_hold_count += st.hyp_hold_count;
    total.min_ratio_all = std::min(total.min_ratio_all, st.min_ratio_all);
    total.min_ratio_hyp = std::min(total.min_ratio_hyp, st.min_ratio_hyp);
    total.max_sym_rel = std::max(total.max_sym_rel, st.max_sym_rel);
    for (const FailureRec& r : st.bound_fail) record_failure(total.bound_fail, r);
  }

  const Field field = f.space().field();
  ordered_json suites;
  std::vector<std::string> failed, skipped;

  auto push_failures = [&](ordered_json& suite, const std::vector<FailureRec>& recs) {
    if (recs.empty()) return;
    ordered_json arr = ordered_json::array();
    for (const FailureRec& r : recs) arr.push_back(failure_json(r, n, field));
    suite["failures"] = arr;
  };

  {
    ordered_json s;
    if (!lemma_applicable) {
      s["status"] = "skipped";
      s["reason"] = "frame operator differs from the identity by more than 1e-10";
      skipped.push_back("operator_lemma");
    } else {
      s["status"] = lemma_pass ? "passed" : "failed";
      s["subsets"] = lemma_subsets;
      s["max_relative_residual"] = total.lemma_max_rel;
      s["threshold"] = "1e-10 * (1 + |U|_inf^2)";
      push_failures(s, lemma_fail);
      if (!lemma_pass) failed.push_back("operator_lemma");
    }
    suites["operator_lemma"] = s;
  }
  {
    ordered_json s;
    const bool pass = total.gen_fail.empty();
    s["status"] = pass ? "passed" : "failed";
    s["cases"] = total.gen_cases;
    s["max_relative_residual"] = total.gen_max_rel;
    s["max_alt_path_relative_residual"] = total.gen_alt_max_rel;
    s["tol_rel"] = o.tol_rel;
    push_failures(s, total.gen_fail);
    if (!pass) failed.push_back("general_identity");
    suites["general_identity"] = s;
  }
  {
    ordered_json s;
    if (!parseval) {
      s["status"] = "skipped";
      s["reason"] = "frame pair is not Parseval";
      skipped.push_back("parseval_identity");
    } else {
      const bool pass = total.par_fail.empty();
      s["status"] = pass ? "passed" : "failed";
      s["cases"] = total.par_cases;
      s["max_relative_residual"] = total.par_max_rel;
      s["max_alt_path_relative_residual"] = total.par_alt_max_rel;
      s["tol_rel"] = 1e-8;
      s["alt_path_gate"] = alt_gate;
      push_failures(s, total.par_fail);
      if (!pass) failed.push_back("parseval_identity");
    }
    suites["parseval_identity"] = s;
  }
  {
    ordered_json s;
    if (!parseval) {
      s["status"] = "skipped";
      s["reason"] = "frame pair is not Parseval";
      skipped.push_back("operator_identity");
    } else {
      s["status"] = op_pass ? "passed" : "failed";
      s["subsets"] = op_subsets;
      s["max_residual"] = op_max_residual;
      s["threshold"] = op_threshold;
      push_failures(s, op_fail);
      if (!op_pass) failed.push_back("operator_identity");
    }
    suites["operator_identity"] = s;
  }
  {
    ordered_json s;
    if (!parseval) {
      s["status"] = "skipped";
      s["reason"] = "frame pair is not Parseval";
      skipped.push_back("lower_bound");
    } else {
      const bool pass = total.bound_fail.empty();
      s["status"] = pass ? "passed" : "failed";
      s["cases"] = total.bound_cases;
      s["hypothesis_hold_count"] = total.hyp_hold_count;
      s["hypothesis_frequency"] =
          total.bound_cases > 0
              ? static_cast<double>(total.hyp_hold_count) / total.bound_cases
              : 0.0;
      s["min_ratio_under_hypothesis"] =
          std::isfinite(total.min_ratio_hyp) ? ordered_json(total.min_ratio_hyp)
                                             : ordered_json("none");
      s["min_ratio_overall"] =
          std::isfinite(total.min_ratio_all) ? ordered_json(total.min_ratio_all)
                                             : ordered_json("none");
      s["max_symmetry_residual"] = total.max_sym_rel;
      s["ratio_floor"] = kRatioFloor;
      push_failures(s, total.bound_fail);
      if (!pass) failed.push_back("lower_bound");
    }
    suites["lower_bound"] = s;
  }

  const bool all_pass = failed.empty();
  ordered_json report = manifest("verify", o.in, &f);
  report["params"] = {{"seed", o.common.seed},
                      {"subsets", o.subsets},
                      {"subset_count", static_cast<int>(masks.size())},
                      {"trials", o.trials},
                      {"tol_rel", o.tol_rel}};
  report["frame_operator"] = {{"parseval_residual", parseval_residual},
                              {"condition", ev.condition()},
                              {"is_parseval", parseval}};
  report["suites"] = suites;
  report["summary"] = {{"passed", all_pass},
                       {"failed_suites", failed},
                       {"skipped_suites", skipped}};

  std::ostringstream human;
  human << "verify " << o.in << ": p=" << fmt(f.space().p()) << " dim=" << f.space().dim()
        << " N=" << n << " field=" << pasflab::to_string(field) << "\n"
        << "  subsets examined: " << masks.size() << ", trials per subset: " << o.trials
        << "\n"
        << "  parseval residual " << fmt(parseval_residual)
        << (parseval ? " (Parseval)" : " (not Parseval)") << "\n";
  for (auto& [name, s] : suites.items()) {
    human << "  " << name << ": " << s["status"].get<std::string>();
    if (s.contains("max_relative_residual"))
      human << " (max relative residual " << fmt(s["max_relative_residual"].get<double>())
            << ")";
    if (s.contains("reason")) human << " (" << s["reason"].get<std::string>() << ")";
    human << "\n";
  }
  human << "result: " << (all_pass ? "PASS" : "FAIL") << "\n";

  emit_report(report, o.common, human.str());
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// search

struct SearchOpts {
  std::string in;
  std::string mode = "ratio";
  int restarts = 4;
  int iters = 60;
  int subset_sample = 64;
  bool restricted = false;
  CommonOpts common;
};

int run_search(const SearchOpts& o) {
  const Pasf f = pasflab::load_frame(o.in);
  check_envelope(f.space(), f.size());
  if (o.mode != "ratio" && o.mode != "violation")
    throw std::invalid_argument("--mode must be \"ratio\" or \"violation\"");

  pasflab::SearchConfig cfg;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.iters;
  cfg.seed = o.common.seed;
  cfg.restrict_to_hypothesis = o.restricted;
  cfg.subset_sample = o.subset_sample;

  ordered_json report = manifest("search", o.in, &f);
  report["params"] = {{"seed", o.common.seed}, {"mode", o.mode},
                      {"restarts", o.restarts}, {"iters", o.iters},
                      {"subset_sample", o.subset_sample},
                      {"restricted", o.restricted}};

  std::ostringstream human;
  const Field field = f.space().field();

  if (o.mode == "ratio") {
    const pasflab::SearchOutcome out = pasflab::minimize_ratio(f, cfg);
    ordered_json r;
    r["best_ratio"] = out.best_ratio;
    r["meets_three_quarters"] = out.best_ratio >= kRatioFloor;
    r["best_m_members"] = members_json(out.best_m);
    r["best_m_bitmask"] = out.best_m.to_hex();
    r["best_x"] = coords_json(out.best_x.coords(), field);
    r["hypothesis_at_best"] = out.hypothesis_at_best;
    r["hypothesis_holds_at_best"] = out.hypothesis_holds_at_best;
    r["subsets_examined"] = out.subsets_examined;
    ordered_json trace = ordered_json::array();
    for (const auto& [it, val] : out.trace) trace.push_back(ordered_json::array({it, val}));
    r["trace"] = trace;
    report["result"] = r;
    human << "search ratio on " << o.in << ": best ratio " << fmt(out.best_ratio)
          << " at |M|=" << out.best_m.size() << " (" << out.best_m.to_hex() << ")"
          << ", hypothesis " << (out.hypothesis_holds_at_best ? "holds" : "violated")
          << " (h=" << fmt(out.hypothesis_at_best) << ")\n"
          << "  subsets examined: " << out.subsets_examined << ", floor "
          << fmt(kRatioFloor) << " "
          << (out.best_ratio >= kRatioFloor ? "respected" : "BREACHED") << "\n";
  } else {
    const auto hit = pasflab::find_hypothesis_violation(f, cfg);
    ordered_json r;
    r["found"] = hit.has_value();
    if (hit) {
      r["m_members"] = members_json(hit->m);
      r["m_bitmask"] = hit->m.to_hex();
      r["x"] = coords_json(hit->x.coords(), field);
      r["h_value"] = hit->h_value;
      human << "hypothesis violation found on " << o.in << ": h=" << fmt(hit->h_value)
            << " at |M|=" << hit->m.size() << " (" << hit->m.to_hex() << ")\n";
    } else {
      human << "no hypothesis violation found on " << o.in << " within budget\n";
    }
    report["result"] = r;
  }

  return emit_report(report, o.common, human.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-approximate Schauder frame laboratory"};
  app.set_version_flag("--version", PASFLAB_VERSION);
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random frame pair");
  gen_cmd->add_option("--p", gen.p, "Norm exponent p (1 < p < infinity)")
      ->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim, "Ambient dimension (1..16)")->required();
  gen_cmd->add_option("--N", gen.n, "Number of frame vectors (1..64)")->required();
  gen_cmd->add_option("--field", gen.field, "Scalar field: real or complex")
      ->capture_default_str();
  gen_cmd->add_flag("--parseval", gen.parseval, "Rescale so the frame operator is I");
  gen_cmd->add_option("--seed", gen.common.seed, "Generation seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.common.out, "Output frame file")->required();
  gen_cmd->add_flag("--human", gen.common.human, "Human-readable stdout instead of JSON");

  AnalyzeOpts analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Report norm bounds and certification");
  analyze_cmd->add_option("--in", analyze.in, "Frame file")->required();
  analyze_cmd->add_option("--restarts", analyze.restarts, "Power-iteration restarts")
      ->capture_default_str();
  analyze_cmd->add_option("--seed", analyze.common.seed, "Estimation seed")
      ->capture_default_str();
  analyze_cmd->add_option("--out", analyze.common.out, "Also write the JSON report here");
  analyze_cmd->add_flag("--human", analyze.common.human,
                        "Human-readable stdout instead of JSON");

  VerifyOpts verify;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check the reconstruction identities and the 3/4 bound");
  verify_cmd->add_option("--in", verify.in, "Frame file")->required();
  verify_cmd->add_option("--subsets", verify.subsets,
                         "\"auto\", \"exhaustive\" (N <= 24), or a sample count")
      ->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Random probes per subset")
      ->capture_default_str();
  verify_cmd->add_option("--tol-rel", verify.tol_rel,
                         "Relative tolerance for the general identity")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.common.seed, "Probe seed")->capture_default_str();
  verify_cmd->add_option("--out", verify.common.out, "Also write the JSON report here");
  verify_cmd->add_flag("--human", verify.common.human,
                       "Human-readable stdout instead of JSON");

  SearchOpts search;
  CLI::App* search_cmd =
      app.add_subcommand("search", "Adversarial search over subsets and unit vectors");
  search_cmd->add_option("--in", search.in, "Frame file")->required();
  search_cmd->add_option("--mode", search.mode, "\"ratio\" or \"violation\"")
      ->capture_default_str();
  search_cmd->add_option("--restarts", search.restarts, "Descents per subset")
      ->capture_default_str();
  search_cmd->add_option("--iters", search.iters, "Max descent iterations")
      ->capture_default_str();
  search_cmd->add_option("--subsets", search.subset_sample,
                         "Subsets sampled when N > 12 (exhaustive otherwise)")
      ->capture_default_str();
  search_cmd->add_flag("--restricted", search.restricted,
                       "Only accept iterates satisfying the hypothesis");
  search_cmd->add_option("--seed", search.common.seed, "Search seed")->capture_default_str();
  search_cmd->add_option("--out", search.common.out, "Also write the JSON report here");
  search_cmd->add_flag("--human", search.common.human,
                       "Human-readable stdout instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (search_cmd->parsed()) return run_search(search);
    std::cerr << "pasflab: no subcommand selected\n";
    return 2;
  } catch (const pasflab::NotParsevalError& e) {
    std::cerr << "pasflab: precondition failure: " << e.what() << "\n";
    return 4;
  } catch (const pasflab::NotInvertibleError& e) {
    std::cerr << "pasflab: precondition failure: " << e.what() << "\n";
    return 4;
  } catch (const pasflab::GenerationError& e) {
    std::cerr << "pasflab: generation failed: " << e.what() << "\n";
    return 3;
  } catch (const pasflab::FrameIoError& e) {
    std::cerr << "pasflab: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pasflab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pasflab: " << e.what() << "\n";
    return 2;
  }
}
