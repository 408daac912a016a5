#pragma once

#include "riesz/nbhd.hpp"
#include "riesz/verdict.hpp"

#include <vector>

namespace riesz {

// ---------------------------------------------------------------------------
// Elementary tensors
// ---------------------------------------------------------------------------

/// Tensor grid over the spaces of x and y.
inline SpacePtr tensor_space(const SpacePtr& left, const SpacePtr& right) {
  return make_tensor(left->id + "(x)" + right->id, left, right);
}

inline void require_factors(const Space& t, const Space& e, const Space& f) {
  if (t.kind != SpaceKind::tensor_grid)
    throw Error(ErrorKind::space_mismatch, "'" + t.id + "' is not a tensor grid");
  if (!same_space(*t.left, e) || !same_space(*t.right, f))
    throw Error(ErrorKind::space_mismatch,
                "factors '" + e.id + "', '" + f.id + "' are not registered for tensor grid '" + t.id + "'");
}

/// x (x) y on the tensor grid t: (i,j) -> x_i y_j.
///
/// Tails survive only when both factors are constant (the result tail is the
/// product); a nonzero tail against a nonzero finitely supported factor has
/// no finite description and is rejected.
inline Element tensor(const Element& x, const Element& y, const SpacePtr& t) {
  require_factors(*t, x.space(), y.space());
  if (x.is_zero() || y.is_zero()) return zero(t);
  Element::Coords out;
  const bool tails = x.tail() != 0 || y.tail() != 0;
  if (tails && !(x.coords().empty() && y.coords().empty()))
    throw Error(ErrorKind::unrepresentable, "tensor of a nonzero tail with a non-constant factor is not representable");
  for (const auto& [i, xi] : x.coords())
    for (const auto& [j, yj] : y.coords()) out.emplace_hint(out.end(), Index{i.i, j.i}, xi * yj);
  return Element(t, std::move(out), x.tail() * y.tail());
}

inline Element tensor(const Element& x, const Element& y) {
  return tensor(x, y, tensor_space(x.space_ptr(), y.space_ptr()));
}

/// Exact rank decomposition z = sum x_k (x) y_k on a tensor grid of two
/// finite grids; uses at most min(|I|,|J|) terms.
inline std::vector<std::pair<Element, Element>> decompose_elementary(const Element& z) {
  const Space& t = z.space();
  if (!is_finite(t) || t.kind != SpaceKind::tensor_grid)
    throw Error(ErrorKind::invalid_argument, "decomposition needs a tensor grid of two finite grids");
  std::vector<std::pair<Element, Element>> out;
  Element rest = z;
  while (!rest.is_zero()) {
    const auto& [pivot, pv] = *rest.coords().begin();
    Element::Coords col, row;
    for (const auto& [k, v] : rest.coords()) {
      if (k.j == pivot.j) col[{k.i, 0}] = v / pv;
      if (k.i == pivot.i) row[{k.j, 0}] = v;
    }
    Element x(t.left, std::move(col));
    Element y(t.right, std::move(row));
    rest = rest - tensor(x, y, z.space_ptr());
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wedge identities
// ---------------------------------------------------------------------------

struct WedgeComparison {
  Element lhs;  ///< (a (x) b) ^ (c (x) d)
  Element rhs;  ///< (a ^ c) (x) (b ^ d)
  bool equal;
};

/// Compares the meet of two elementary tensors with the tensor of the meets.
/// rhs <= lhs always holds; equality is reported, not assumed.
inline WedgeComparison meet_of_elementary(const Element& a, const Element& b, const Element& c, const Element& d,
                                          const SpacePtr& t) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  require_nonnegative(c, "c");
  require_nonnegative(d, "d");
  Element lhs = lat_inf(tensor(a, b, t), tensor(c, d, t));
  Element rhs = tensor(lat_inf(a, c), lat_inf(b, d), t);
  const bool eq = lhs == rhs;
  return {std::move(lhs), std::move(rhs), eq};
}

/// (a (x) b) ^ (c (x) d) <= (a ^ c) (x) (b v d).
inline bool mixed_bound_check(const Element& a, const Element& b, const Element& c, const Element& d,
                              const SpacePtr& t) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  require_nonnegative(c, "c");
  require_nonnegative(d, "d");
  return leq(lat_inf(tensor(a, b, t), tensor(c, d, t)), tensor(lat_inf(a, c), lat_sup(b, d), t));
}

struct Dichotomy {
  bool a_le_c;
  bool b_le_d;
};

/// For a (x) b <= c (x) d with nonnegative factors, reports which of
/// a <= c, b <= d hold (at least one always does).
inline Dichotomy dominance_dichotomy(const Element& a, const Element& b, const Element& c, const Element& d,
                                     const SpacePtr& t) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
  require_nonnegative(c, "c");
  require_nonnegative(d, "d");
  const Element ab = tensor(a, b, t);
  const Element cd = tensor(c, d, t);
  if (!leq(ab, cd)) {
    const Element gap = positive_part(ab - cd);
    const auto& [k, v] = *gap.coords().begin();
    throw Error(ErrorKind::domination_failure,
                "a(x)b is not dominated by c(x)d at " + index_key(*t, k) + " (excess " + to_string(v) + ")");
  }
  return {leq(a, c), leq(b, d)};
}

// ---------------------------------------------------------------------------
// Rank-1 domination
// ---------------------------------------------------------------------------

struct Rank1Witness {
  Element a;
  Element b;
};

namespace detail {

inline void require_finite_nonneg_tensor(const Element& m) {
  if (m.space().kind != SpaceKind::tensor_grid) throw Error(ErrorKind::space_mismatch, "expected a tensor element");
  if (m.tail() != 0) throw Error(ErrorKind::unrepresentable, "rank-1 search needs a finitely supported element");
  require_nonnegative(m, "M");
}

/// Least factor f with f (x) given >= M (given on the right) or given (x) f >= M.
inline Element least_factor(const Element& m, const Element& given, bool given_is_right) {
  detail::require_finite_nonneg_tensor(m);
  const Space& t = m.space();
  const SpacePtr& target = given_is_right ? t.left : t.right;
  require_same_space(given_is_right ? *t.right : *t.left, given.space());
  Element::Coords out;
  for (const auto& [k, v] : m.coords()) {
    const std::int64_t own = given_is_right ? k.i : k.j;
    const std::int64_t other = given_is_right ? k.j : k.i;
    const Rational g = given.at({other, 0});
    if (g <= 0)
      throw Error(ErrorKind::zero_divisor,
                  "given factor vanishes on active coordinate " + std::to_string(other) + " of '" + t.id + "'");
    Rational ratio = v / g;
    auto [it, inserted] = out.try_emplace({own, 0}, ratio);
    if (!inserted && it->second < ratio) it->second = std::move(ratio);
  }
  return Element(target, std::move(out));
}

}  // namespace detail

/// Pointwise-least a with a (x) b >= M, i.e. a_i = max_j M_ij / b_j over the
/// active columns; rows of zeros get a_i = 0.
inline Element minimal_dominator_given_b(const Element& m, const Element& b) {
  return detail::least_factor(m, b, true);
}

/// Transposed counterpart: least b with a (x) b >= M.
inline Element minimal_dominator_given_a(const Element& m, const Element& a) {
  return detail::least_factor(m, a, false);
}

/// Sound non-membership certificate for Sol(U (x) V), or (oracle kind) the
/// record of an exhausted search grid, which is not a proof.
struct Certificate {
  enum class Kind { dichotomy, oracle };
  Kind kind = Kind::dichotomy;
  std::optional<Element> x1;
  std::optional<Element> y1;
  std::optional<Rational> resolution;
};

inline void require_factor_nbhds(const Space& t, const SolidNbhd& u, const SolidNbhd& v) {
  if (t.kind != SpaceKind::tensor_grid) throw Error(ErrorKind::space_mismatch, "expected a tensor element");
  require_same_space(*t.left, *u.space);
  require_same_space(*t.right, *v.space);
}

/// Re-checks that |z| >= x1 (x) y1 > 0 with x1, y1 >= 0, x1 outside U and y1
/// outside V. Any rank-1 dominator of |z| would then dominate x1 (x) y1, so
/// by the dichotomy and solidity it could not come from U (x) V.
inline bool certificate_valid(const Element& z, const SolidNbhd& u, const SolidNbhd& v, const Certificate& cert) {
  if (cert.kind != Certificate::Kind::dichotomy || !cert.x1 || !cert.y1) return false;
  require_factor_nbhds(z.space(), u, v);
  if (!is_nonnegative(*cert.x1) || !is_nonnegative(*cert.y1)) return false;
  const Element minorant = tensor(*cert.x1, *cert.y1, z.space_ptr());
  if (minorant.is_zero() || !leq(minorant, lat_abs(z))) return false;
  return !u.contains(*cert.x1) && !v.contains(*cert.y1);
}

inline bool witness_valid(const Element& z, const SolidNbhd& u, const SolidNbhd& v, const Rank1Witness& w) {
  require_factor_nbhds(z.space(), u, v);
  if (!is_nonnegative(w.a) || !is_nonnegative(w.b)) return false;
  if (!u.contains(w.a) || !v.contains(w.b)) return false;
  return leq(lat_abs(z), tensor(w.a, w.b, z.space_ptr()));
}

namespace detail {

/// Smallest (up to bisection) scale s in (0, cap] with pred(s) true, for a
/// predicate monotone increasing in s; nullopt when pred(cap) is false.
template <typename Pred>
std::optional<Rational> least_scale(Pred pred, const Rational& cap, int steps) {
  if (!pred(cap)) return std::nullopt;
  Rational lo = 0, hi = cap;
  for (int k = 0; k < steps; ++k) {
    Rational mid = (lo + hi) / 2;
    if (pred(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

inline Element indicator(const SpacePtr& s, const std::vector<std::int64_t>& coords, const Rational& value) {
  Element::Coords c;
  for (auto k : coords) c[{k, 0}] = value;
  return Element(s, std::move(c));
}

}  // namespace detail

struct CertificateSearch {
  int bisection_steps = 64;
  std::size_t max_subset_support = 6;  ///< rectangles only enumerated up to this many active rows/cols
};

/// Searches rectangles I x J of the support of |z| for a minorant
/// (p 1_I) (x) (q 1_J) <= |z| with p 1_I outside U and q 1_J outside V.
inline std::optional<Certificate> non_membership_certificate(const Element& z, const SolidNbhd& u,
                                                             const SolidNbhd& v, const CertificateSearch& opt = {}) {
  if (z.is_zero()) throw Error(ErrorKind::invalid_argument, "zero lies in every neighborhood");
  require_factor_nbhds(z.space(), u, v);
  const Element m = lat_abs(z);
  detail::require_finite_nonneg_tensor(m);
  const Space& t = z.space();

  std::vector<std::int64_t> rows, cols;
  for (const auto& [k, val] : m.coords()) {
    rows.push_back(k.i);
    cols.push_back(k.j);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

  auto try_rectangle = [&](const std::vector<std::int64_t>& is,
                           const std::vector<std::int64_t>& js) -> std::optional<Certificate> {
    std::optional<Rational> mn;
    for (auto i : is)
      for (auto j : js) {
        Rational e = m.at({i, j});
        if (e == 0) return std::nullopt;
        if (!mn || e < *mn) mn = e;
      }
    const Rational& corner = *mn;
    auto excluded_u = [&](const Rational& p) { return !u.contains(detail::indicator(t.left, is, p)); };
    auto excluded_v = [&](const Rational& q) { return !v.contains(detail::indicator(t.right, js, q)); };
    auto make = [&](const Rational& p) -> std::optional<Certificate> {
      if (p <= 0) return std::nullopt;
      const Rational q = corner / p;
      if (!excluded_u(p) || !excluded_v(q)) return std::nullopt;
      Certificate c;
      c.x1 = detail::indicator(t.left, is, p);
      c.y1 = detail::indicator(t.right, js, q);
      return c;
    };
    if (auto r = exact_sqrt(corner))
      if (auto c = make(*r)) return c;
    if (auto c = make(corner)) return c;
    // beyond the largest unit value the meet no longer grows
    Rational cap_u = 1, cap_v = 1;
    for (auto i : is) cap_u = rmax(cap_u, unit_value(*t.left, u.unit, {i, 0}));
    for (auto j : js) cap_v = rmax(cap_v, unit_value(*t.right, v.unit, {j, 0}));
    auto p_lo = detail::least_scale(excluded_u, cap_u, opt.bisection_steps);
    auto q_lo = detail::least_scale(excluded_v, cap_v, opt.bisection_steps);
    if (!p_lo || !q_lo || *p_lo * *q_lo > corner) return std::nullopt;
    return make(*p_lo);
  };

  for (const auto& [k, val] : m.coords())
    if (auto c = try_rectangle({k.i}, {k.j})) return c;

  if (rows.size() <= opt.max_subset_support && cols.size() <= opt.max_subset_support) {
    auto subsets = [](const std::vector<std::int64_t>& base) {
      std::vector<std::vector<std::int64_t>> out;
      for (std::size_t mask = 1; mask < (std::size_t{1} << base.size()); ++mask) {
        std::vector<std::int64_t> s;
        for (std::size_t b = 0; b < base.size(); ++b)
          if (mask & (std::size_t{1} << b)) s.push_back(base[b]);
        if (s.size() > 0) out.push_back(std::move(s));
      }
      return out;
    };
    for (const auto& is : subsets(rows))
      for (const auto& js : subsets(cols)) {
        if (is.size() == 1 && js.size() == 1) continue;
        if (auto c = try_rectangle(is, js)) return c;
      }
  }
  return std::nullopt;
}

struct MembershipResult {
  Status status = Status::inconclusive;
  std::optional<Rank1Witness> witness;
  std::optional<Certificate> certificate;
};

struct MembershipSearch {
  int bisection_steps = 64;
  int doubling_steps = 64;
  std::vector<Element> extra_b_shapes;  ///< additional right-factor directions to scan
  CertificateSearch certificate;
};

namespace detail {

/// Scans t > 0 for t*shape in the given factor neighborhood and base/t in the
/// other. `given_ok(t)` is monotone decreasing, `other_ok(t)` increasing.
template <typename GivenOk, typename OtherOk>
std::optional<Rational> scan_scale(GivenOk given_ok, OtherOk other_ok, const std::optional<Rational>& balanced,
                                   const MembershipSearch& opt) {
  if (balanced && given_ok(*balanced) && other_ok(*balanced)) return balanced;
  Rational hi = 1;
  int k = 0;
  while (!other_ok(hi)) {
    if (++k > opt.doubling_steps) return std::nullopt;
    hi *= 2;
  }
  if (given_ok(hi)) return hi;
  Rational lo = 1;
  k = 0;
  while (!given_ok(lo)) {
    if (++k > opt.doubling_steps) return std::nullopt;
    lo /= 2;
  }
  if (other_ok(lo)) return lo;
  for (int s = 0; s < opt.bisection_steps; ++s) {
    Rational mid = (lo + hi) / 2;
    const bool g = given_ok(mid), o = other_ok(mid);
    if (g && o) return mid;
    if (g) lo = mid;
    else if (o) hi = mid;
    else return std::nullopt;  // thresholds cross: no scale of this shape works
  }
  return std::nullopt;
}

/// Scale t with max(t * shape) == max(base / t), when it is rational.
inline std::optional<Rational> balanced_scale(const Element& shape, const Element& base) {
  Rational s = 0, b = 0;
  for (const auto& [k, val] : shape.coords()) s = rmax(s, val);
  for (const auto& [k, val] : base.coords()) b = rmax(b, val);
  if (s <= 0 || b <= 0) return std::nullopt;
  return exact_sqrt(b / s);
}

}  // namespace detail

/// Decides z in Sol(U (x) V), i.e. |z| <= a (x) b for some a in U+, b in V+.
///
/// Answers are certified: a re-validated rank-1 witness, a dichotomy
/// certificate, or inconclusive when neither is found.
inline MembershipResult sol_membership(const Element& z, const SolidNbhd& u, const SolidNbhd& v,
                                       const MembershipSearch& opt = {}) {
  require_factor_nbhds(z.space(), u, v);
  const Space& t = z.space();
  if (z.is_zero()) return {Status::pass, Rank1Witness{zero(t.left), zero(t.right)}, std::nullopt};
  const Element m = lat_abs(z);
  detail::require_finite_nonneg_tensor(m);

  Element::Coords col_max, row_max, col_ones, row_ones;
  for (const auto& [k, val] : m.coords()) {
    auto& c = col_max[{k.j, 0}];
    c = rmax(c, val);
    auto& r = row_max[{k.i, 0}];
    r = rmax(r, val);
    col_ones[{k.j, 0}] = 1;
    row_ones[{k.i, 0}] = 1;
  }
  std::vector<Element> b_shapes{Element(t.right, col_max), Element(t.right, col_ones)};
  for (const auto& s : opt.extra_b_shapes) {
    require_same_space(*t.right, s.space());
    b_shapes.push_back(s);
  }
  std::vector<Element> a_shapes{Element(t.left, row_max), Element(t.left, row_ones)};

  auto accept = [&](Element a, Element b) -> std::optional<MembershipResult> {
    Rank1Witness w{std::move(a), std::move(b)};
    if (!witness_valid(z, u, v, w)) return std::nullopt;
    return MembershipResult{Status::pass, std::move(w), std::nullopt};
  };

  for (const auto& shape : b_shapes) {
    bool usable = is_nonnegative(shape);
    for (const auto& [k, val] : col_ones) usable = usable && shape.at(k) > 0;
    if (!usable) continue;
    const Element base = minimal_dominator_given_b(m, shape);
    auto scale = detail::scan_scale([&](const Rational& s) { return v.contains(s * shape); },
                                    [&](const Rational& s) { return u.contains((1 / s) * base); },
                                    detail::balanced_scale(shape, base), opt);
    if (scale)
      if (auto r = accept((1 / *scale) * base, *scale * shape)) return *r;
  }
  for (const auto& shape : a_shapes) {
    const Element base = minimal_dominator_given_a(m, shape);
    auto scale = detail::scan_scale([&](const Rational& s) { return u.contains(s * shape); },
                                    [&](const Rational& s) { return v.contains((1 / s) * base); },
                                    detail::balanced_scale(shape, base), opt);
    if (scale)
      if (auto r = accept(*scale * shape, (1 / *scale) * base)) return *r;
  }
  if (auto cert = non_membership_certificate(z, u, v, opt.certificate))
    if (certificate_valid(z, u, v, *cert)) return {Status::fail, std::nullopt, std::move(cert)};
  return {};
}

}  // namespace riesz
