#pragma once

#include "riesz/fremlin.hpp"
#include "riesz/random.hpp"
#include "riesz/trace.hpp"

namespace riesz {

/// Base neighborhood Sol(U (x) V) of the tensor-grid topology.
struct TensorNbhd {
  SpacePtr space;  ///< tensor grid
  SolidNbhd u;
  SolidNbhd v;

  TensorNbhd(SpacePtr t, SolidNbhd left, SolidNbhd right)
      : space(std::move(t)), u(std::move(left)), v(std::move(right)) {
    require_factor_nbhds(*space, u, v);
  }

  MembershipResult membership(const Element& z, const MembershipSearch& opt = {}) const {
    require_same_space(*space, z.space());
    return sol_membership(z, u, v, opt);
  }
};

inline bool nbhd_contains(const SolidNbhd& n, const Element& x) { return n.contains(x); }

/// Default unit of a factor space: constant one, or 2^(-k) on sequence models.
inline UnitSpec default_unit(const Space& s) {
  if (s.kind == SpaceKind::seq_model) return UnitSpec::geometric();
  if (s.kind == SpaceKind::tensor_grid) return UnitSpec::tensor(default_unit(*s.left), default_unit(*s.right));
  return UnitSpec::one();
}

namespace detail {

inline UnitSpec unit_join(const UnitSpec& a, const UnitSpec& b) {
  if (a == b) return a;
  if (a.kind == UnitSpec::Kind::explicit_element && b.kind == UnitSpec::Kind::explicit_element)
    return UnitSpec::of(lat_sup(*a.element, *b.element));
  return UnitSpec::join(a, b);
}

inline SolidNbhd nbhd_intersection_base(const SolidNbhd& a, const SolidNbhd& b) {
  require_same_space(*a.space, *b.space);
  return SolidNbhd(a.space, unit_join(a.unit, b.unit), rmin(a.eps, b.eps));
}

}  // namespace detail

/// Neighborhood contained in both inputs: unit join and smaller threshold on
/// each factor. A larger unit only increases rho, so membership transfers.
inline TensorNbhd nbhd_meet(const TensorNbhd& w1, const TensorNbhd& w2) {
  require_same_space(*w1.space, *w2.space);
  return TensorNbhd(w1.space, detail::nbhd_intersection_base(w1.u, w2.u), detail::nbhd_intersection_base(w1.v, w2.v));
}

/// Halves both factor thresholds so that W0 + W0 is inside W.
inline TensorNbhd nbhd_half(const TensorNbhd& w) {
  return TensorNbhd(w.space, SolidNbhd(w.u.space, w.u.unit, w.u.eps / 2), SolidNbhd(w.v.space, w.v.unit, w.v.eps / 2));
}

/// Witness for z1 + z2 from witnesses of z1 and z2:
/// |z1 + z2| <= a1 (x) b1 + a2 (x) b2 <= (a1 + a2) (x) (b1 + b2).
inline Rank1Witness combine_witnesses(const Rank1Witness& w1, const Rank1Witness& w2) {
  return {w1.a + w2.a, w1.b + w2.b};
}

/// Re-validates lambda z in W via the witness (|lambda| a, b).
inline bool scalar_absorb_check(const TensorNbhd& w, const Rational& lambda, const Element& z,
                                const Rank1Witness& witness) {
  if (abs(lambda) > 1) throw Error(ErrorKind::invalid_argument, "scalar absorption needs |lambda| <= 1");
  if (!witness_valid(z, w.u, w.v, witness))
    throw Error(ErrorKind::invalid_argument, "supplied witness does not certify membership");
  const Rank1Witness scaled{abs(lambda) * witness.a, witness.b};
  return witness_valid(lambda * z, w.u, w.v, scaled);
}

namespace detail {

/// Positive rational strictly below the norm: half of it when exact.
inline Rational half_norm(const NormValue& nv) {
  if (!nv.squared) return nv.value / 2;
  if (auto r = exact_sqrt(nv.value)) return *r / 2;
  return nv.value < 1 ? Rational(nv.value / 2) : Rational(1, 2);
}

/// Rational upper bound of the norm.
inline Rational norm_bound(const NormValue& nv) {
  if (!nv.squared) return nv.value;
  if (auto r = exact_sqrt(nv.value)) return *r;
  return rmax(nv.value, Rational(1));
}

}  // namespace detail

struct Separation {
  SolidNbhd u;
  SolidNbhd v;
  Certificate certificate;
};

/// Separates z != 0 from 0: a positive minorant x1 (x) y1 <= |z| on one
/// entry, and factor neighborhoods at half of rho(x1), rho(y1).
inline Separation hausdorff_separation(const Element& z) {
  if (z.is_zero()) throw Error(ErrorKind::invalid_argument, "cannot separate zero from itself");
  const Space& t = z.space();
  if (t.kind != SpaceKind::tensor_grid) throw Error(ErrorKind::space_mismatch, "expected a tensor element");
  const Element m = lat_abs(z);
  if (m.coords().empty()) throw Error(ErrorKind::unrepresentable, "separation needs a finitely supported element");
  const auto& [entry, value] = *m.coords().begin();
  Rational p = value, q = 1;
  if (auto r = exact_sqrt(value)) p = q = *r;
  const Element x1 = basis(t.left, entry.i, p);
  const Element y1 = basis(t.right, entry.j, q);
  const UnitSpec ul = default_unit(*t.left), ur = default_unit(*t.right);
  SolidNbhd u(t.left, ul, detail::half_norm(rho(x1, ul)));
  SolidNbhd v(t.right, ur, detail::half_norm(rho(y1, ur)));
  Certificate cert;
  cert.x1 = x1;
  cert.y1 = y1;
  if (!certificate_valid(z, u, v, cert))
    throw Error(ErrorKind::invalid_argument, "separation certificate failed re-validation");
  return {std::move(u), std::move(v), std::move(cert)};
}

/// Last index from which every term up to the horizon lies in the
/// neighborhood, or nullopt when the final term is outside.
inline std::optional<std::int64_t> entry_index(const TraceSpec& t, const SolidNbhd& n, std::int64_t horizon) {
  std::optional<std::int64_t> entry;
  for (std::int64_t k = horizon; k >= 1; --k) {
    if (!n.contains(trace_eval(t, k))) break;
    entry = k;
  }
  return entry;
}

/// x_a (x) y_b in U (x) V for all a >= a0, b >= b0 up to the horizon.
inline Verdict tau_null(const TraceSpec& xs, const TraceSpec& ys, const TensorNbhd& w, std::int64_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::invalid_argument, "empty trace window");
  require_same_space(*w.space->left, *xs.space);
  require_same_space(*w.space->right, *ys.space);
  Verdict out;
  out.threshold = w.u.eps;
  const auto a0 = entry_index(xs, w.u, horizon);
  const auto b0 = entry_index(ys, w.v, horizon);
  if (a0) out.trace_tail.push_back({"alpha0", Rational(*a0)});
  if (b0) out.trace_tail.push_back({"beta0", Rational(*b0)});
  if (a0 && b0) {
    out.status = Status::pass;
    out.detail = "entry indices alpha0=" + std::to_string(*a0) + " beta0=" + std::to_string(*b0);
    return out;
  }
  out.status = Status::fail;
  if (!a0) {
    out.witness = TracePoint{"x:" + std::to_string(horizon), w.u.value(trace_eval(xs, horizon)).value};
    out.detail = "left trace leaves U at the horizon";
  } else {
    out.witness = TracePoint{"y:" + std::to_string(horizon), w.v.value(trace_eval(ys, horizon)).value};
    out.detail = "right trace leaves V at the horizon";
  }
  return out;
}

struct RefinementSample {
  std::int64_t sample = 0;
  Rational value;      ///< rho_{u(x)v}(z) of the sampled member
  Rational product;    ///< rho_u(a) * rho_v(b) of its witness
  Rational threshold;  ///< eps of the un-neighborhood
  bool ok = false;
};

struct RefinementReport {
  Verdict verdict;
  std::vector<RefinementSample> samples;
};

namespace detail {

/// Random a >= 0 with rho(a) < eps (scaled down when needed).
inline Element random_member(Rng& rng, const SolidNbhd& n) {
  Element a = random_element(rng, n.space, true);
  if (n.contains(a)) return a;
  const Rational size = detail::norm_bound(norm(a));
  Element scaled = (n.eps * rng.unit_fraction() / size) * a;
  if (!n.contains(scaled)) scaled = zero(n.space);
  return scaled;
}

}  // namespace detail

/// Samples members of Sol(U (x) V) from random witnesses (a, b) and checks
/// each against the un-neighborhood {z : || |z| ^ u(x)v || < eps}.
inline RefinementReport un_refinement_check(const SolidNbhd& w_un, const SolidNbhd& u, const SolidNbhd& v,
                                            std::int64_t samples, std::uint64_t seed) {
  if (u.eps >= 1 || v.eps >= 1) throw Error(ErrorKind::invalid_argument, "refinement check needs eps < 1");
  require_factor_nbhds(*w_un.space, u, v);
  const SpacePtr& t = w_un.space;
  Rng rng(seed);
  RefinementReport report;
  report.verdict.status = Status::pass;
  report.verdict.threshold = w_un.eps;
  for (std::int64_t s = 1; s <= samples; ++s) {
    Element a = detail::random_member(rng, u);
    Element b = detail::random_member(rng, v);
    const Element dom = tensor(a, b, t);
    Element::Coords zc;
    for (const auto& [k, val] : dom.coords()) {
      Rational f = rng.nonneg(1, 6);
      zc[k] = rng.coin() ? Rational(-f * val) : Rational(f * val);
    }
    Element z(t, std::move(zc));
    if (!witness_valid(z, u, v, {a, b}))
      throw Error(ErrorKind::invalid_argument, "sampled refinement witness failed re-validation");
    RefinementSample row;
    row.sample = s;
    row.value = w_un.value(z).value;
    row.product = u.value(a).value * v.value(b).value;
    row.threshold = w_un.eps;
    row.ok = w_un.contains(z);
    if (!row.ok && report.verdict.status == Status::pass) {
      report.verdict.status = Status::fail;
      report.verdict.witness = TracePoint{std::to_string(s), row.value};
    }
    report.samples.push_back(std::move(row));
  }
  return report;
}

}  // namespace riesz
