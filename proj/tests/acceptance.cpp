// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "riesz/scenario.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

namespace {

using namespace riesz;
using riesz::testing::q;
namespace fs = std::filesystem;

// Pinned parameters.
constexpr double kIdentityBudgetSeconds = 60.0;
constexpr std::int64_t kGridHorizon = 100;
constexpr std::int64_t kLinfHorizon = 50;
constexpr std::int64_t kPreservationHorizon = 200;
const Rational kLinfTol = rat(1, 10);
const Rational kMetricTol = rat(1, 50);
const Rational kPreservationTol = rat(1, 100);
const Rational kOracleResolution = rat(1, 20);
constexpr int kOracleMinCertified = 190;

const fs::path kWork = fs::path(RIESZ_WORK_DIR) / "acceptance";

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matrix matrix_of(const Element& z, std::size_t rows, std::size_t cols) {
  Matrix m(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m[i][j] = z.at({static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(j + 1)});
  return m;
}

CheckerConfig config(std::int64_t horizon, const Rational& tol) {
  CheckerConfig c;
  c.horizon = horizon;
  c.tol = tol;
  return c;
}

// 1. Exhaustive audits of the provable identities.
Outcome identity_audits() {
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t tuples = 0, violations = 0;
  int runs = 0;
  bool all_verified = true;
  for (auto id : {ClaimId::wedge_lower_bound, ClaimId::mixed_upper_bound, ClaimId::dichotomy, ClaimId::cross_norm,
                  ClaimId::disjointness_preservation})
    for (std::size_t n : {2, 3}) {
      AuditClaim c;
      c.id = id;
      c.rows = c.cols = n;
      const auto r = audit(c);
      ++runs;
      tuples += r.checked;
      violations += r.violations;
      all_verified = all_verified && r.status == AuditStatus::verified_on_space;
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = all_verified && violations == 0 && secs < kIdentityBudgetSeconds;
  return {ok, std::to_string(runs) + " exhaustive audits, " + std::to_string(tuples) + " tuples, " +
                  std::to_string(violations) + " violations, " + fmt_seconds(secs) + " (budget " +
                  fmt_seconds(kIdentityBudgetSeconds) + ")"};
}

// 2. The lattice equality of elementary tensors is falsified.
Outcome equality_falsified() {
  LemmaOptions opt;
  opt.out = (kWork / "lemmas").string();
  std::ostringstream log, err;
  const int code = check_lemmas(opt, log, err);
  if (code != 0) return {false, "check-lemmas exit " + std::to_string(code) + ": " + err.str()};
  const auto ledger = json_io::Json::parse(slurp(fs::path(opt.out) / "audit-ledger.json"));
  bool falsified = false, revalidated = false;
  for (const auto& c : ledger["claims"]) {
    if (c["claim_id"] != "wedge_equality") continue;
    falsified = c["status"] == "falsified";
    for (const auto& r : c["results"])
      for (const auto& w : r["witnesses"]) {
        std::vector<Rational> a, b, cc, d;
        for (const auto& v : w["args"]["a"]) a.push_back(json_io::decode_rational(v));
        for (const auto& v : w["args"]["b"]) b.push_back(json_io::decode_rational(v));
        for (const auto& v : w["args"]["c"]) cc.push_back(json_io::decode_rational(v));
        for (const auto& v : w["args"]["d"]) d.push_back(json_io::decode_rational(v));
        auto e = make_grid("E", a.size()), f = make_grid("F", b.size());
        const auto m = meet_of_elementary(from_values(e, a), from_values(f, b), from_values(e, cc), from_values(f, d),
                                          tensor_space(e, f));
        const bool lhs_ok = w["lhs"] == json_io::encode(matrix_of(m.lhs, a.size(), b.size()));
        const bool rhs_ok = w["rhs"] == json_io::encode(matrix_of(m.rhs, a.size(), b.size()));
        revalidated = revalidated || (!m.equal && lhs_ok && rhs_ok);
      }
  }
  auto e = make_grid("E", 2);
  const auto bundled = meet_of_elementary(from_values(e, {2, 1}), from_values(e, {1, 3}), from_values(e, {1, 2}),
                                          from_values(e, {2, 1}), tensor_space(e, e));
  const bool exact = matrix_of(bundled.lhs, 2, 2) == Matrix{{2, 1}, {1, 2}} &&
                     matrix_of(bundled.rhs, 2, 2) == Matrix{{1, 1}, {1, 1}} && !bundled.equal;
  return {falsified && revalidated && exact, std::string("ledger status ") + (falsified ? "falsified" : "verified") +
                                                 ", witness re-validated " + (revalidated ? "yes" : "no") +
                                                 ", bundled lhs [[2,1],[1,2]] vs rhs [[1,1],[1,1]] " +
                                                 (exact ? "exact" : "MISMATCH")};
}

// 3. Unbounded times un-null on the eventually-constant sup model.
Outcome linf_counterexample() {
  auto l = make_linf("L");
  auto ll = tensor_space(l, l);
  const auto u = TraceSpec::diagonal_scaled(l);
  const auto v = TraceSpec::scaled_basis(l, Coef("1/n"));
  CheckerConfig c = config(kLinfHorizon, kLinfTol);
  c.unit = UnitSpec::one();
  const Verdict vf = is_un_null(v, c);
  bool factor_exact = vf.passed() && !vf.trace_tail.empty();
  for (const auto& p : vf.trace_tail) factor_exact = factor_exact && p.value == 1 / Rational(std::stoll(p.index));
  for (std::int64_t n = 1; n <= kLinfHorizon; ++n)
    factor_exact = factor_exact && rho(trace_eval(v, n), UnitSpec::one()).value == q(1, n);

  CheckerConfig ct = config(kLinfHorizon, kLinfTol);
  ct.unit = UnitSpec::tensor(UnitSpec::one(), UnitSpec::one());
  const Verdict vt = double_un_null(DoubleTrace(u, v, ll), ct, DoubleMode::diagonal);
  bool tensor_exact = vt.status == Status::fail && !vt.trace_tail.empty();
  for (const auto& p : vt.trace_tail) tensor_exact = tensor_exact && p.value == 1;
  for (std::int64_t n = 1; n <= kLinfHorizon; ++n) {
    const Element z = tensor(trace_eval(u, n), trace_eval(v, n), ll);
    tensor_exact = tensor_exact && z == basis(ll, Index{n, n}) && rho(z, *ct.unit).value == 1;
  }
  std::ostringstream log, err;
  RunOverrides flags;
  flags.out = (kWork / "linf").string();
  const int code = run_scenario(std::string(RIESZ_SCENARIO_DIR) + "/linf-diagonal.json", flags, log, err);
  return {factor_exact && tensor_exact && code == 0,
          std::string("factor values 1/n ") + (factor_exact ? "exact" : "WRONG") + ", diagonal values 1 " +
              (tensor_exact ? "exact (expected fail)" : "WRONG") + ", scenario exit " + std::to_string(code)};
}

// 4. Grid checkers against direct pointwise evaluation.
Outcome grid_equivalence() {
  Rng rng(4004);
  const std::vector<Rational> tols{rat(1, 100), rat(1, 50), rat(1, 10), rat(1, 3)};
  int uaw_disagree = 0, un_disagree = 0, nulls = 0;
  for (int k = 0; k < 200; ++k) {
    const auto t = riesz::testing::random_grid_trace(rng, 5);
    const CheckerConfig c = config(rng.between(20, kGridHorizon), tols[rng.below(tols.size())]);
    const bool ref = t.pointwise_null(c.horizon, effective_window(c), c.tol);
    nulls += ref;
    if (is_uaw_null(t.spec(), c).passed() != ref) ++uaw_disagree;
    if (is_un_null(t.spec(), c).status != is_norm_null(t.spec(), c).status) ++un_disagree;
  }
  return {uaw_disagree == 0 && un_disagree == 0,
          "200 traces (" + std::to_string(nulls) + " null), uaw/pointwise disagreements " +
              std::to_string(uaw_disagree) + ", un/norm disagreements " + std::to_string(un_disagree)};
}

// 5. Metric nullity against the uaw checker, and metric axioms.
Outcome metric_agreement() {
  Rng rng(5005);
  auto seq = make_seq("S", NormTag::l1);
  int disagree = 0, nulls = 0;
  for (int k = 0; k < 200; ++k) {
    TraceSpec t;
    if (k % 2 == 0) {
      t = riesz::testing::random_separated_trace(rng, 5).spec();
    } else {
      const Rational c = Rational(rng.between(1, 12)) / 4;
      switch (rng.below(4)) {
        case 0: t = TraceSpec::scaled_basis(seq, Coef("(" + to_string(c) + ")/n^3")); break;
        case 1: t = TraceSpec::basis(seq); break;
        case 2: t = TraceSpec::constant(basis(seq, rng.between(1, 4), c)); break;
        default:
          t = TraceSpec::sum(TraceSpec::constant(basis(seq, rng.between(1, 4), c)),
                             TraceSpec::scaled_basis(seq, Coef("1/n^3")));
          break;
      }
    }
    const CheckerConfig cfg = config(kGridHorizon, kMetricTol);
    const bool uaw = is_uaw_null(t, cfg).passed();
    nulls += uaw;
    if (is_metric_null(t, cfg).passed() != uaw) ++disagree;
  }
  const auto spaces = riesz::testing::factor_spaces();
  int axiom_failures = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto& s = spaces[rng.below(spaces.size())];
    CheckerConfig cfg;
    cfg.unit = riesz::testing::random_unit(rng, s);
    const Element x = random_element(rng, s, false), y = random_element(rng, s, false),
                  z = random_element(rng, s, false);
    if (uaw_metric(x + z, y + z, cfg) != uaw_metric(x, y, cfg)) ++axiom_failures;
    if (uaw_metric(x, z, cfg) > uaw_metric(x, y, cfg) + uaw_metric(y, z, cfg)) ++axiom_failures;
  }
  return {disagree == 0 && axiom_failures == 0,
          "200 traces (" + std::to_string(nulls) + " null), metric/uaw disagreements " + std::to_string(disagree) +
              ", 1000 triples with " + std::to_string(axiom_failures) + " axiom failures"};
}

// 6. Base axioms of the tensor neighborhood system.
Outcome base_axioms() {
  Rng rng(6006);
  const auto spaces = riesz::testing::factor_spaces();
  int meet_fail = 0, half_fail = 0, absorb_fail = 0, sep_fail = 0;
  int meet_samples = 0, half_samples = 0, absorb_samples = 0;
  for (int p = 0; p < 100; ++p) {
    const auto& e = spaces[rng.below(spaces.size())];
    const auto& f = spaces[rng.below(spaces.size())];
    auto t = tensor_space(e, f);
    const TensorNbhd w1(t, riesz::testing::random_nbhd(rng, e), riesz::testing::random_nbhd(rng, f));
    const TensorNbhd w2(t, riesz::testing::random_nbhd(rng, e), riesz::testing::random_nbhd(rng, f));
    const TensorNbhd w0 = nbhd_meet(w1, w2);
    for (int k = 0; k < 10; ++k, ++meet_samples) {
      const auto [z, wit] = riesz::testing::random_member(rng, w0);
      if (!witness_valid(z, w0.u, w0.v, wit) || !witness_valid(z, w1.u, w1.v, wit) ||
          !witness_valid(z, w2.u, w2.v, wit))
        ++meet_fail;
    }
    const TensorNbhd h = nbhd_half(w1);
    for (int k = 0; k < 10; ++k, ++half_samples) {
      const auto [z1, a1] = riesz::testing::random_member(rng, h);
      const auto [z2, a2] = riesz::testing::random_member(rng, h);
      if (!witness_valid(z1 + z2, w1.u, w1.v, combine_witnesses(a1, a2))) ++half_fail;
    }
    for (int k = 0; k < 10; ++k, ++absorb_samples) {
      const auto [z, wit] = riesz::testing::random_member(rng, w1);
      const Rational lambda = rng.signed_value(1, 12);
      if (!scalar_absorb_check(w1, lambda, z, wit)) ++absorb_fail;
    }
    Element z = random_element(rng, t, false);
    if (z.is_zero()) z = basis(t, Index{1, 1}, rng.unit_fraction());
    const Separation sep = hausdorff_separation(z);
    if (!certificate_valid(z, sep.u, sep.v, sep.certificate)) ++sep_fail;
  }
  return {meet_fail + half_fail + absorb_fail + sep_fail == 0,
          "meet " + std::to_string(meet_samples) + " samples/" + std::to_string(meet_fail) + " violations, half " +
              std::to_string(half_samples) + "/" + std::to_string(half_fail) + ", absorption " +
              std::to_string(absorb_samples) + "/" + std::to_string(absorb_fail) + ", separation 100/" +
              std::to_string(sep_fail)};
}

// 7. Sampled members of the tensor neighborhood lie in the un-neighborhood.
Outcome refinement() {
  const std::vector<Rational> eps{rat(1, 4), rat(1, 2), rat(9, 10)};
  const std::vector<std::pair<std::size_t, std::size_t>> dims{{4, 4}, {3, 2}, {2, 4}};
  const std::int64_t per_eps[] = {334, 333, 333};
  std::int64_t samples = 0, violations = 0, over_product = 0;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    auto e = make_grid("E", dims[k].first), f = make_grid("F", dims[k].second);
    auto t = tensor_space(e, f);
    SolidNbhd u(e, UnitSpec::one(), eps[k]), v(f, UnitSpec::one(), eps[k]);
    SolidNbhd w_un(t, UnitSpec::tensor(UnitSpec::one(), UnitSpec::one()), eps[k]);
    const auto report = un_refinement_check(w_un, u, v, per_eps[k], 7000 + k);
    for (const auto& s : report.samples) {
      ++samples;
      if (!s.ok) ++violations;
      if (s.product > eps[k] * eps[k]) ++over_product;
    }
  }
  return {samples == 1000 && violations == 0 && over_product == 0,
          std::to_string(samples) + " samples at eps 1/4, 1/2, 9/10: " + std::to_string(violations) +
              " violations, " + std::to_string(over_product) + " products above eps^2"};
}

// 8. Preservation of un, uaw and uo nullity under tensoring, and tau-nullity.
TraceSpec null_factor_trace(Rng& rng, const SpacePtr& s) {
  auto coef = [&] {
    return "(" + to_string(Rational(rng.between(1, 4)) / 4) + ")/n^" + std::to_string(rng.between(1, 2));
  };
  if (s->kind == SpaceKind::finite_grid) {
    std::vector<Coef> cs;
    for (std::size_t k = 0; k < s->points.size(); ++k) cs.emplace_back(rng.below(4) == 0 ? "0" : coef());
    return TraceSpec::pointwise(s, cs);
  }
  switch (rng.below(3)) {
    case 0: return TraceSpec::scaled_basis(s, Coef(coef()));
    case 1: return TraceSpec::scaled_basis(s, Coef(coef()), rng.between(1, 4));
    default:
      return TraceSpec::sum(TraceSpec::scaled_basis(s, Coef(coef()), rng.between(1, 4)),
                            TraceSpec::scaled_basis(s, Coef(coef())));
  }
}

Outcome preservation() {
  Rng rng(8008);
  const std::vector<SpacePtr> spaces{make_grid("G2", 2), make_grid("G3", 3), make_seq("S1", NormTag::l1),
                                     make_seq("S0", NormTag::sup)};
  int runs = 0, failures = 0, tau_checked = 0, tau_fail = 0;
  for (int p = 0; p < 50; ++p) {
    const auto& e = spaces[rng.below(spaces.size())];
    const auto& f = spaces[rng.below(spaces.size())];
    auto t = tensor_space(e, f);
    const TraceSpec xs = null_factor_trace(rng, e), ys = null_factor_trace(rng, f);
    CheckerConfig ce = config(kPreservationHorizon, kPreservationTol), cf = ce;
    ce.battery = default_battery(*e, 4);
    cf.battery = default_battery(*f, 4);
    const CheckerConfig ct = tensor_config(ce, cf, *t);
    for (auto kind : {ConvergenceKind::un, ConvergenceKind::uaw, ConvergenceKind::uo}) {
      ++runs;
      try {
        if (!preservation_experiment(kind, xs, ys, ce, cf, ct, t).tensor.passed()) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
    const TensorNbhd w(t, riesz::testing::random_nbhd(rng, e), riesz::testing::random_nbhd(rng, f));
    bool in_u = true, in_v = true;
    for (std::int64_t n = kPreservationHorizon / 2 + 1; n <= kPreservationHorizon; ++n) {
      in_u = in_u && nbhd_contains(w.u, trace_eval(xs, n));
      in_v = in_v && nbhd_contains(w.v, trace_eval(ys, n));
    }
    if (in_u && in_v) {
      ++tau_checked;
      if (!tau_null(xs, ys, w, kPreservationHorizon).passed()) ++tau_fail;
    }
  }
  return {failures == 0 && tau_fail == 0 && tau_checked > 0,
          "50 pairs, " + std::to_string(runs) + " experiments with " + std::to_string(failures) +
              " failures; tau-null " + std::to_string(tau_checked) + " eligible pairs, " + std::to_string(tau_fail) +
              " failures"};
}

// 9. Certified membership answers against the brute-force grid scan.
Outcome oracle_equivalence() {
  Rng rng(9009);
  const std::vector<Rational> eps{rat(1, 4), rat(1, 2), rat(3, 4), rat(9, 10), rat(5, 4)};
  int certified = 0, contradictions = 0, members = 0;
  for (int k = 0; k < 200; ++k) {
    auto e = make_grid("E", rng.between(1, 4)), f = make_grid("F", rng.between(1, 4));
    auto t = tensor_space(e, f);
    const Rational eu = eps[rng.below(eps.size())], ev = eps[rng.below(eps.size())];
    SolidNbhd u(e, UnitSpec::one(), eu), v(f, UnitSpec::one(), ev);
    // with unit one and thresholds below one, membership means max |z| < eu ev;
    // entries stay below half of it or exceed it by a twentieth
    const Rational scale = rmin(eu, 1) * rmin(ev, 1);
    const bool inside = rng.coin();
    Element::Coords c;
    for (const auto& idx : all_indices(*t)) {
      if (rng.below(3) == 0) continue;
      const Rational mag = inside ? scale * rng.between(0, 10) / 20 : scale * (rat(21, 20) + rng.nonneg(1, 4));
      c[idx] = rng.coin() ? mag : Rational(-mag);
    }
    const Element z(t, std::move(c));
    const auto m = sol_membership(z, u, v);
    const auto o = brute_force_dominator(lat_abs(z), u, v, kOracleResolution);
    if (m.status == Status::inconclusive) continue;
    ++certified;
    members += m.status == Status::pass;
    const bool m_ok = m.status == Status::pass ? witness_valid(z, u, v, *m.witness)
                                               : certificate_valid(z, u, v, *m.certificate);
    const bool o_ok = o.verdict.status != Status::pass || witness_valid(z, u, v, *o.witness);
    if (!m_ok || !o_ok || m.status != o.verdict.status) ++contradictions;
  }
  return {contradictions == 0 && certified >= kOracleMinCertified,
          std::to_string(certified) + "/200 certified (" + std::to_string(members) + " members), " +
              std::to_string(contradictions) + " contradictions at resolution 1/20"};
}

// 10. Bundled scenarios rerun to byte-identical outputs.
Outcome determinism() {
  int scenarios = 0, files = 0, diffs = 0;
  std::vector<fs::path> bundled;
  for (const auto& entry : fs::directory_iterator(RIESZ_SCENARIO_DIR))
    if (entry.path().extension() == ".json") bundled.push_back(entry.path());
  std::sort(bundled.begin(), bundled.end());
  for (const auto& path : bundled) {
    ++scenarios;
    const fs::path a = kWork / "det" / path.stem() / "a", b = kWork / "det" / path.stem() / "b";
    fs::remove_all(a);
    fs::remove_all(b);
    std::ostringstream log, err;
    RunOverrides fa, fb;
    fa.out = a.string();
    fb.out = b.string();
    if (run_scenario(path.string(), fa, log, err) != 0 || run_scenario(path.string(), fb, log, err) != 0) ++diffs;
    for (const auto& entry : fs::directory_iterator(a)) {
      ++files;
      if (slurp(entry.path()) != slurp(b / entry.path().filename())) ++diffs;
    }
  }
  return {diffs == 0 && scenarios > 0, std::to_string(scenarios) + " scenarios, " + std::to_string(files) +
                                           " files compared, " + std::to_string(diffs) + " differences"};
}

}  // namespace

int main() {
  fs::create_directories(kWork);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"identity audits on 2x2 and 3x3 grids", identity_audits},
      {"elementary-tensor meet equality falsified", equality_falsified},
      {"eventually-constant counterexample", linf_counterexample},
      {"grid uaw/pointwise and un/norm equivalence", grid_equivalence},
      {"uaw metric agreement and axioms", metric_agreement},
      {"tensor neighborhood base axioms", base_axioms},
      {"refinement of the un-neighborhood", refinement},
      {"preservation experiments and tau-nullity", preservation},
      {"membership search against the oracle", oracle_equivalence},
      {"scenario determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.ok;
    std::printf("criterion %2zu %s  %s: %s [%s]\n", k + 1, o.ok ? "PASS" : "FAIL", criteria[k].first,
                o.detail.c_str(), fmt_seconds(secs).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
