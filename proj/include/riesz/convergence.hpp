#pragma once

#include "riesz/fremlin.hpp"
#include "riesz/functional.hpp"
#include "riesz/topology.hpp"
#include "riesz/trace.hpp"

#include <set>

namespace riesz {

/// Windowed semidecision parameters: a trace is declared null when the
/// checked quantity stays below `tol` on the last `window` indices up to
/// `horizon`. Unit and battery make un/uaw/uo verdicts relative to them.
struct CheckerConfig {
  std::int64_t horizon = 100;
  std::int64_t window = 0;  ///< 0 selects horizon / 2
  Rational tol = rat(1, 100);
  std::optional<UnitSpec> unit;
  std::vector<Functional> battery;
};

/// Coordinate functionals (plus ones-sum on sequence models); products of
/// the factor batteries on a tensor grid.
inline std::vector<Functional> default_battery(const Space& s, std::int64_t count = 8) {
  std::vector<Functional> out;
  switch (s.kind) {
    case SpaceKind::finite_grid:
      for (std::int64_t k = 1; k <= static_cast<std::int64_t>(s.points.size()); ++k)
        out.push_back(Functional::coordinate(k));
      break;
    case SpaceKind::seq_model:
      for (std::int64_t k = 1; k <= count; ++k) out.push_back(Functional::coordinate(k));
      out.push_back(Functional::ones_sum());
      break;
    case SpaceKind::linf_model:
      for (std::int64_t k = 1; k <= count; ++k) out.push_back(Functional::coordinate(k));
      break;
    case SpaceKind::tensor_grid:
      for (const auto& f : default_battery(*s.left, count))
        for (const auto& g : default_battery(*s.right, count)) out.push_back(Functional::product(f, g));
      break;
  }
  return out;
}

inline std::int64_t effective_window(const CheckerConfig& cfg) {
  return cfg.window > 0 ? cfg.window : std::max<std::int64_t>(1, cfg.horizon / 2);
}

inline void validate_config(const CheckerConfig& cfg) {
  if (cfg.horizon < 1) throw Error(ErrorKind::invalid_argument, "horizon must be >= 1");
  if (effective_window(cfg) > cfg.horizon) throw Error(ErrorKind::invalid_argument, "window exceeds horizon");
  if (cfg.tol <= 0) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  for (const auto& f : cfg.battery)
    if (!f.positive()) throw Error(ErrorKind::invalid_functional, "battery functionals must be positive");
}

inline UnitSpec config_unit(const CheckerConfig& cfg, const Space& s) {
  return cfg.unit ? *cfg.unit : default_unit(s);
}

inline std::vector<Functional> config_battery(const CheckerConfig& cfg, const Space& s) {
  return cfg.battery.empty() ? default_battery(s) : cfg.battery;
}

/// Term of a single or double trace, labelled "n" or "m,n".
struct Term {
  std::string index;
  Element value;
};

/// Double trace (m, n) -> x_m (x) y_n on a tensor grid.
struct DoubleTrace {
  TraceSpec xs;
  TraceSpec ys;
  SpacePtr space;

  DoubleTrace(TraceSpec x, TraceSpec y, SpacePtr t) : xs(std::move(x)), ys(std::move(y)), space(std::move(t)) {
    require_factors(*space, *xs.space, *ys.space);
  }
  DoubleTrace(TraceSpec x, TraceSpec y) : DoubleTrace(x, y, tensor_space(x.space, y.space)) {}

  Element operator()(std::int64_t m, std::int64_t n) const {
    return tensor(trace_eval(xs, m), trace_eval(ys, n), space);
  }
};

inline DoubleTrace tensor_double_trace(const TraceSpec& xs, const TraceSpec& ys, const SpacePtr& t) {
  return DoubleTrace(xs, ys, t);
}

/// Square tail block [H/2, H]^2 or the diagonal m = n over the last window.
enum class DoubleMode { window, diagonal };

namespace detail {

struct Window {
  std::vector<Term> terms;
  std::set<Index> probe;  ///< coordinates seen before the window
  bool probe_all = false;
};

inline Window single_window(const TraceSpec& t, const CheckerConfig& cfg, bool with_probe) {
  validate_config(cfg);
  Window w;
  const std::int64_t start = cfg.horizon - effective_window(cfg) + 1;
  for (std::int64_t n = start; n <= cfg.horizon; ++n) w.terms.push_back({std::to_string(n), trace_eval(t, n)});
  if (with_probe) {
    if (is_finite(*t.space)) w.probe_all = true;
    for (std::int64_t n = 1; n < start && !w.probe_all; ++n) {
      const Element x = trace_eval(t, n);
      for (const auto& [k, v] : x.coords()) w.probe.insert(k);
    }
  }
  return w;
}

inline std::int64_t block_start(const CheckerConfig& cfg) { return std::max<std::int64_t>(1, cfg.horizon / 2); }

inline Window double_window(const DoubleTrace& d, const CheckerConfig& cfg, DoubleMode mode, bool with_probe) {
  validate_config(cfg);
  Window w;
  if (mode == DoubleMode::diagonal) {
    const std::int64_t start = cfg.horizon - effective_window(cfg) + 1;
    for (std::int64_t n = start; n <= cfg.horizon; ++n)
      w.terms.push_back({std::to_string(n) + "," + std::to_string(n), d(n, n)});
    if (with_probe) {
      if (is_finite(*d.space)) w.probe_all = true;
      for (std::int64_t n = 1; n < start && !w.probe_all; ++n) {
        const Element z = d(n, n);
        for (const auto& [k, v] : z.coords()) w.probe.insert(k);
      }
    }
    return w;
  }
  const std::int64_t lo = block_start(cfg);
  std::vector<Element> xs, ys;
  for (std::int64_t k = lo; k <= cfg.horizon; ++k) {
    xs.push_back(trace_eval(d.xs, k));
    ys.push_back(trace_eval(d.ys, k));
  }
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = 0; b < ys.size(); ++b)
      w.terms.push_back({std::to_string(lo + static_cast<std::int64_t>(a)) + "," +
                             std::to_string(lo + static_cast<std::int64_t>(b)),
                         tensor(xs[a], ys[b], d.space)});
  if (with_probe) {
    if (is_finite(*d.space)) {
      w.probe_all = true;
    } else {
      std::set<std::int64_t> rows, cols;
      for (std::int64_t k = 1; k < lo; ++k) {
        const Element x = trace_eval(d.xs, k), y = trace_eval(d.ys, k);
        for (const auto& [i, v] : x.coords()) rows.insert(i.i);
        for (const auto& [j, v] : y.coords()) cols.insert(j.i);
      }
      for (auto i : rows)
        for (auto j : cols) w.probe.insert({i, j});
    }
  }
  return w;
}

/// pass iff quantity < threshold on every term; first violation is the witness.
template <typename Quantity>
Verdict windowed(const std::vector<Term>& terms, const Rational& threshold, bool squared, Quantity quantity) {
  Verdict out;
  out.threshold = threshold;
  out.squared = squared;
  out.status = Status::pass;
  for (const auto& term : terms) {
    auto [value, detail] = quantity(term.value);
    if (!(value < threshold) && out.status == Status::pass) {
      out.status = Status::fail;
      out.witness = TracePoint{term.index, value};
      out.detail = std::move(detail);
    }
    out.trace_tail.push_back({term.index, std::move(value)});
  }
  return out;
}

inline std::string describe(const Space& s, const Functional& f) {
  switch (f.kind) {
    case Functional::Kind::coordinate: return "coordinate(" + index_key(s, f.index) + ")";
    case Functional::Kind::ones_sum: return "ones-sum";
    case Functional::Kind::weighted: return "weighted";
    case Functional::Kind::product:
      return "product(" + describe(*s.left, *f.left) + "," + describe(*s.right, *f.right) + ")";
  }
  return "?";
}

inline Verdict check_norm(const std::vector<Term>& terms, const Space& s, const Rational& tol) {
  const bool sq = s.norm_tag == NormTag::l2;
  return windowed(terms, sq ? Rational(tol * tol) : tol, sq, [](const Element& x) {
    return std::pair{norm(x).value, std::string("norm")};
  });
}

inline Verdict check_un(const std::vector<Term>& terms, const Space& s, const UnitSpec& u, const Rational& tol) {
  validate_unit(s, u);
  const bool sq = s.norm_tag == NormTag::l2;
  return windowed(terms, sq ? Rational(tol * tol) : tol, sq, [&](const Element& x) {
    return std::pair{rho(x, u).value, std::string("rho_unit")};
  });
}

inline Verdict check_uaw(const std::vector<Term>& terms, const Space& s, const UnitSpec& u,
                         const std::vector<Functional>& battery, const Rational& tol) {
  validate_unit(s, u);
  if (battery.empty()) throw Error(ErrorKind::invalid_argument, "uaw check needs a nonempty battery");
  return windowed(terms, tol, false, [&](const Element& x) {
    const Element meet = unit_meet(x, u);
    Rational best = 0;
    std::string which = describe(s, battery.front());
    for (const auto& f : battery) {
      Rational val = abs(apply_functional(f, meet));
      if (val > best) {
        best = std::move(val);
        which = describe(s, f);
      }
    }
    return std::pair{best, "f=" + which};
  });
}

/// Coordinatewise check of |x_n| ^ u on the probe coordinates (plus the
/// tail), reported through its nonincreasing tail envelope.
inline Verdict check_uo(const Window& w, const Space& s, const UnitSpec& u, const Rational& tol) {
  validate_unit(s, u);
  std::vector<Rational> raw;
  std::vector<std::string> where;
  for (const auto& term : w.terms) {
    const Element meet = unit_meet(term.value, u);
    Rational best = abs(meet.tail());
    std::string at = best > 0 ? "tail" : "";
    for (const auto& [k, v] : meet.coords()) {
      if (!w.probe_all && !w.probe.count(k)) continue;
      if (v > best) {
        best = v;
        at = index_key(s, k);
      }
    }
    raw.push_back(std::move(best));
    where.push_back(std::move(at));
  }
  // envelope E(n) = max over later window terms
  std::vector<Term> dummy;
  Verdict out;
  out.threshold = tol;
  out.status = Status::pass;
  std::vector<Rational> env(raw.size());
  Rational run = 0;
  for (std::size_t k = raw.size(); k-- > 0;) {
    run = rmax(run, raw[k]);
    env[k] = run;
  }
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!(raw[k] < tol) && out.status == Status::pass) {
      out.status = Status::fail;
      out.witness = TracePoint{w.terms[k].index, raw[k]};
      out.detail = "coordinate " + where[k];
    }
    out.trace_tail.push_back({w.terms[k].index, env[k]});
  }
  return out;
}

}  // namespace detail

/// ||x_n|| < tol over the window (squared norms on l2 models).
inline Verdict is_norm_null(const TraceSpec& t, const CheckerConfig& cfg) {
  return detail::check_norm(detail::single_window(t, cfg, false).terms, *t.space, cfg.tol);
}

/// rho_u(x_n) < tol over the window, relative to the configured unit.
inline Verdict is_un_null(const TraceSpec& t, const CheckerConfig& cfg) {
  return detail::check_un(detail::single_window(t, cfg, false).terms, *t.space, config_unit(cfg, *t.space), cfg.tol);
}

/// max_f |f(|x_n| ^ u)| < tol over the window, relative to unit and battery.
inline Verdict is_uaw_null(const TraceSpec& t, const CheckerConfig& cfg) {
  return detail::check_uaw(detail::single_window(t, cfg, false).terms, *t.space, config_unit(cfg, *t.space),
                           config_battery(cfg, *t.space), cfg.tol);
}

/// Coordinatewise: every coordinate seen before the window has |x_n| ^ u
/// below tol throughout the window.
inline Verdict is_uo_null(const TraceSpec& t, const CheckerConfig& cfg) {
  return detail::check_uo(detail::single_window(t, cfg, true), *t.space, config_unit(cfg, *t.space), cfg.tol);
}

inline Verdict double_norm_null(const DoubleTrace& d, const CheckerConfig& cfg, DoubleMode mode = DoubleMode::window) {
  return detail::check_norm(detail::double_window(d, cfg, mode, false).terms, *d.space, cfg.tol);
}

inline Verdict double_un_null(const DoubleTrace& d, const CheckerConfig& cfg, DoubleMode mode = DoubleMode::window) {
  return detail::check_un(detail::double_window(d, cfg, mode, false).terms, *d.space, config_unit(cfg, *d.space),
                          cfg.tol);
}

inline Verdict double_uaw_null(const DoubleTrace& d, const CheckerConfig& cfg, DoubleMode mode = DoubleMode::window) {
  return detail::check_uaw(detail::double_window(d, cfg, mode, false).terms, *d.space, config_unit(cfg, *d.space),
                           config_battery(cfg, *d.space), cfg.tol);
}

inline Verdict double_uo_null(const DoubleTrace& d, const CheckerConfig& cfg, DoubleMode mode = DoubleMode::window) {
  return detail::check_uo(detail::double_window(d, cfg, mode, true), *d.space, config_unit(cfg, *d.space), cfg.tol);
}

/// d(x, y) = sum_k phi(|f_k(|x - y| ^ e)|) / 2^k with phi(t) = t / (1 + t),
/// over the configured battery in order.
inline Rational uaw_metric(const Element& x, const Element& y, const CheckerConfig& cfg) {
  const Space& s = x.space();
  const UnitSpec u = config_unit(cfg, s);
  const auto battery = config_battery(cfg, s);
  const Element meet = unit_meet(x - y, u);
  Rational d = 0;
  long k = 1;
  for (const auto& f : battery) {
    const Rational q = abs(apply_functional(f, meet));
    d += q / (1 + q) * pow2_neg(k++);
  }
  return d;
}

/// Metric threshold matched to tol: d < phi(tol) / 2^m forces every battery
/// value below tol, where m is the battery length.
inline Rational metric_threshold(const CheckerConfig& cfg, const Space& s) {
  const auto m = static_cast<long>(config_battery(cfg, s).size());
  return cfg.tol / (1 + cfg.tol) * pow2_neg(m);
}

/// d(x_n, 0) below the matched threshold over the window.
inline Verdict is_metric_null(const TraceSpec& t, const CheckerConfig& cfg) {
  const auto w = detail::single_window(t, cfg, false);
  const Element origin = zero(t.space);
  return detail::windowed(w.terms, metric_threshold(cfg, *t.space), false, [&](const Element& x) {
    return std::pair{uaw_metric(x, origin, cfg), std::string("d(x_n,0)")};
  });
}

enum class ConvergenceKind { un, uaw, uo };

inline const char* to_string(ConvergenceKind k) {
  switch (k) {
    case ConvergenceKind::un: return "un";
    case ConvergenceKind::uaw: return "uaw";
    case ConvergenceKind::uo: return "uo";
  }
  return "?";
}

struct PreservationReport {
  ConvergenceKind kind;
  Verdict left;
  Verdict right;
  Verdict tensor;
};

/// Tensor config derived from the factor configs: unit u (x) v and product
/// functionals f (x) g.
inline CheckerConfig tensor_config(const CheckerConfig& e, const CheckerConfig& f, const Space& t) {
  CheckerConfig out;
  out.horizon = std::max(e.horizon, f.horizon);
  out.window = 0;
  out.tol = rmin(e.tol, f.tol);
  out.unit = UnitSpec::tensor(config_unit(e, *t.left), config_unit(f, *t.right));
  for (const auto& a : config_battery(e, *t.left))
    for (const auto& b : config_battery(f, *t.right)) out.battery.push_back(Functional::product(a, b));
  return out;
}

/// Checks both factor traces are null of the given kind, then runs the
/// matching checker on the double trace x_m (x) y_n over the square block.
inline PreservationReport preservation_experiment(ConvergenceKind kind, const TraceSpec& xs, const TraceSpec& ys,
                                                  const CheckerConfig& cfg_e, const CheckerConfig& cfg_f,
                                                  const CheckerConfig& cfg_t, const SpacePtr& t) {
  const DoubleTrace d(xs, ys, t);
  PreservationReport r{kind, {}, {}, {}};
  switch (kind) {
    case ConvergenceKind::un:
      r.left = is_un_null(xs, cfg_e);
      r.right = is_un_null(ys, cfg_f);
      break;
    case ConvergenceKind::uaw:
      r.left = is_uaw_null(xs, cfg_e);
      r.right = is_uaw_null(ys, cfg_f);
      break;
    case ConvergenceKind::uo:
      r.left = is_uo_null(xs, cfg_e);
      r.right = is_uo_null(ys, cfg_f);
      break;
  }
  if (!r.left.passed() || !r.right.passed())
    throw Error(ErrorKind::invalid_argument,
                std::string("factor precondition failed: traces are not ") + to_string(kind) + "-null");
  switch (kind) {
    case ConvergenceKind::un: r.tensor = double_un_null(d, cfg_t); break;
    case ConvergenceKind::uaw: r.tensor = double_uaw_null(d, cfg_t); break;
    case ConvergenceKind::uo: r.tensor = double_uo_null(d, cfg_t); break;
  }
  return r;
}

}  // namespace riesz
