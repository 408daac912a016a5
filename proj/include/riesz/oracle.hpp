#pragma once

// Brute-force ground truth. Nothing here calls the rank-1 search or the
// tensor identities of fremlin.hpp while searching; those are only used to
// re-validate what the oracle reports.

#include "riesz/fremlin.hpp"
#include "riesz/random.hpp"

#include <array>
#include <functional>
#include <set>

namespace riesz {

// ---------------------------------------------------------------------------
// Rank-1 dominator search
// ---------------------------------------------------------------------------

struct OracleResult {
  Verdict verdict;
  std::optional<Rank1Witness> witness;
  std::optional<Certificate> certificate;  ///< oracle kind: the exhausted grid
  std::uint64_t explored = 0;
  Rational bound;  ///< largest b value scanned
};

/// Enumerates b over {r, 2r, ..., B} on the active columns of M (zero
/// elsewhere), with a_i = max_j M_ij / b_j, and reports the first (a, b)
/// inside U x V. B is the smallest multiple of r above max(M) / eps_U + 1.
inline OracleResult brute_force_dominator(const Element& m, const SolidNbhd& u, const SolidNbhd& v,
                                          const Rational& r) {
  if (r <= 0) throw Error(ErrorKind::invalid_argument, "resolution must be positive");
  require_factor_nbhds(m.space(), u, v);
  const Space& t = m.space();
  if (t.left->kind != SpaceKind::finite_grid || t.right->kind != SpaceKind::finite_grid)
    throw Error(ErrorKind::invalid_argument, "brute-force search needs finite grid factors");
  require_nonnegative(m, "M");

  OracleResult out;
  out.verdict.threshold = r;
  if (m.is_zero()) {
    out.verdict.status = Status::pass;
    out.witness = Rank1Witness{zero(t.left), zero(t.right)};
    return out;
  }

  const auto rows = static_cast<std::int64_t>(t.left->points.size());
  std::set<std::int64_t> active;
  Rational top = 0;
  for (const auto& [k, val] : m.coords()) {
    active.insert(k.j);
    top = rmax(top, val);
  }
  const std::vector<std::int64_t> cols(active.begin(), active.end());
  const Rational raw = top / u.eps + 1;
  Integer steps = boost::multiprecision::numerator(raw / r) / boost::multiprecision::denominator(raw / r) + 1;
  const auto count = steps.convert_to<std::int64_t>();
  out.bound = r * count;

  // column j at level k contributes a_i >= M_ij / (k r)
  auto column_a = [&](std::int64_t j, const Rational& bj) {
    std::vector<Rational> a(static_cast<std::size_t>(rows));
    for (std::int64_t i = 1; i <= rows; ++i) a[i - 1] = m.at({i, j}) / bj;
    return a;
  };
  auto to_left = [&](const std::vector<Rational>& a) { return from_values(t.left, a); };

  // a single column that fails alone fails in every combination
  std::vector<std::vector<Rational>> levels(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::int64_t k = 1; k <= count; ++k) {
      const Rational bj = r * k;
      ++out.explored;
      if (v.contains(basis(t.right, cols[c], bj)) && u.contains(to_left(column_a(cols[c], bj))))
        levels[c].push_back(bj);
    }

  std::vector<Rational> b_val(cols.size());
  std::function<bool(std::size_t, const std::vector<Rational>&)> dfs = [&](std::size_t c,
                                                                           const std::vector<Rational>& a) {
    if (c == cols.size()) return true;
    for (const auto& bj : levels[c]) {
      ++out.explored;
      auto next = column_a(cols[c], bj);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = rmax(next[i], a[i]);
      b_val[c] = bj;
      Element::Coords bc;
      for (std::size_t q = 0; q <= c; ++q) bc[{cols[q], 0}] = b_val[q];
      if (!v.contains(Element(t.right, bc)) || !u.contains(to_left(next))) continue;
      if (dfs(c + 1, next)) {
        if (c + 1 == cols.size()) {
          out.witness = Rank1Witness{to_left(next), Element(t.right, std::move(bc))};
        }
        return true;
      }
    }
    return false;
  };

  if (dfs(0, std::vector<Rational>(static_cast<std::size_t>(rows)))) {
    if (!witness_valid(m, u, v, *out.witness))
      throw Error(ErrorKind::invalid_argument, "oracle witness failed re-validation");
    out.verdict.status = Status::pass;
    out.verdict.detail = "witness found";
    return out;
  }
  out.verdict.status = Status::fail;
  out.verdict.detail = "no witness on the resolution grid up to " + to_string(out.bound);
  Certificate cert;
  cert.kind = Certificate::Kind::oracle;
  cert.resolution = r;
  out.certificate = std::move(cert);
  return out;
}

// ---------------------------------------------------------------------------
// Identity audits
// ---------------------------------------------------------------------------

enum class ClaimId {
  wedge_equality,
  wedge_lower_bound,
  mixed_upper_bound,
  dichotomy,
  cross_norm,
  disjointness_preservation,
  refinement_inclusion,
};

inline constexpr std::array<ClaimId, 7> all_claims{ClaimId::wedge_equality,    ClaimId::wedge_lower_bound,
                                                   ClaimId::mixed_upper_bound, ClaimId::dichotomy,
                                                   ClaimId::cross_norm,        ClaimId::disjointness_preservation,
                                                   ClaimId::refinement_inclusion};

inline const char* to_string(ClaimId c) {
  switch (c) {
    case ClaimId::wedge_equality: return "wedge_equality";
    case ClaimId::wedge_lower_bound: return "wedge_lower_bound";
    case ClaimId::mixed_upper_bound: return "mixed_upper_bound";
    case ClaimId::dichotomy: return "dichotomy";
    case ClaimId::cross_norm: return "cross_norm";
    case ClaimId::disjointness_preservation: return "disjointness_preservation";
    case ClaimId::refinement_inclusion: return "refinement_inclusion";
  }
  return "?";
}

inline ClaimId parse_claim(std::string_view s) {
  for (auto c : all_claims)
    if (s == to_string(c)) return c;
  throw Error(ErrorKind::schema, "unknown claim '" + std::string(s) + "'");
}

/// Statement in words, used as the anchor column of reports.
inline const char* claim_statement(ClaimId c) {
  switch (c) {
    case ClaimId::wedge_equality: return "(a(x)b) ^ (c(x)d) = (a^c)(x)(b^d)";
    case ClaimId::wedge_lower_bound: return "(a^c)(x)(b^d) <= (a(x)b) ^ (c(x)d)";
    case ClaimId::mixed_upper_bound: return "(a(x)b) ^ (c(x)d) <= (a^c)(x)(b v d)";
    case ClaimId::dichotomy: return "a(x)b <= c(x)d implies a <= c or b <= d";
    case ClaimId::cross_norm: return "||x(x)y|| = ||x|| ||y||";
    case ClaimId::disjointness_preservation: return "x1 _|_ x2 implies x1(x)y1 _|_ x2(x)y2";
    case ClaimId::refinement_inclusion: return "Sol(U(x)V) inside the un-neighborhood at eps";
  }
  return "?";
}

inline std::vector<Rational> default_value_set() { return {0, rat(1, 2), 1, rat(3, 2), 2}; }

struct AuditClaim {
  ClaimId id = ClaimId::wedge_lower_bound;
  std::vector<Rational> values = default_value_set();
  std::size_t rows = 2;  ///< size of the left grid
  std::size_t cols = 2;  ///< size of the right grid
  std::vector<Rational> eps{rat(1, 4), rat(1, 2), rat(9, 10)};  ///< refinement thresholds
};

enum class AuditMode { exhaustive, randomized };
enum class AuditStatus { verified_on_space, falsified };

inline const char* to_string(AuditMode m) { return m == AuditMode::exhaustive ? "exhaustive" : "randomized"; }
inline const char* to_string(AuditStatus s) {
  return s == AuditStatus::verified_on_space ? "verified-on-space" : "falsified";
}

using Matrix = std::vector<std::vector<Rational>>;

struct AuditWitness {
  std::vector<std::pair<std::string, std::vector<Rational>>> args;
  Matrix lhs;
  Matrix rhs;
};

struct AuditResult {
  ClaimId id;
  AuditMode mode;
  std::size_t rows = 0, cols = 0;
  std::vector<Rational> values;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  AuditStatus status = AuditStatus::verified_on_space;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<AuditWitness> witnesses;
};

struct AuditOptions {
  AuditMode mode = AuditMode::exhaustive;
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  std::uint64_t cap = 2'000'000'000ULL;  ///< largest exhaustive search space
  std::size_t max_witnesses = 1;
};

namespace detail {

/// Arguments on the left grid and on the right grid for each claim, in the
/// order a, b, c, d (or x, y / x1, x2, y1, y2).
struct ClaimShape {
  std::vector<std::string> left;
  std::vector<std::string> right;
  bool signed_values = false;
};

inline ClaimShape claim_shape(ClaimId c) {
  switch (c) {
    case ClaimId::cross_norm: return {{"x"}, {"y"}, true};
    case ClaimId::disjointness_preservation: return {{"x1", "x2"}, {"y1", "y2"}, false};
    case ClaimId::refinement_inclusion: return {{"a"}, {"b"}, false};
    default: return {{"a", "c"}, {"b", "d"}, false};
  }
}

template <typename T>
T tmin(const T& x, const T& y) { return y < x ? y : x; }
template <typename T>
T tmax(const T& x, const T& y) { return x < y ? y : x; }
template <typename T>
T tabs(const T& x) { return x < 0 ? T(-x) : x; }

/// Claim predicate on raw coordinates. L holds the left arguments row after
/// row (n1 entries each), R the right ones (n2 entries each).
template <typename T>
bool holds(ClaimId c, const T* L, const T* R, std::size_t n1, std::size_t n2) {
  switch (c) {
    case ClaimId::wedge_equality:
    case ClaimId::wedge_lower_bound:
    case ClaimId::mixed_upper_bound: {
      const T *a = L, *cc = L + n1, *b = R, *d = R + n2;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
          const T meet = tmin<T>(a[i] * b[j], cc[i] * d[j]);
          if (c == ClaimId::mixed_upper_bound) {
            if (tmin(a[i], cc[i]) * tmax(b[j], d[j]) < meet) return false;
          } else {
            const T low = tmin(a[i], cc[i]) * tmin(b[j], d[j]);
            if (c == ClaimId::wedge_equality ? !(low == meet) : meet < low) return false;
          }
        }
      return true;
    }
    case ClaimId::dichotomy: {
      const T *a = L, *cc = L + n1, *b = R, *d = R + n2;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          if (cc[i] * d[j] < a[i] * b[j]) return true;  // hypothesis fails
      bool a_le = true, b_le = true;
      for (std::size_t i = 0; i < n1; ++i) a_le = a_le && !(cc[i] < a[i]);
      for (std::size_t j = 0; j < n2; ++j) b_le = b_le && !(d[j] < b[j]);
      return a_le || b_le;
    }
    case ClaimId::cross_norm: {
      T nx = 0, ny = 0, nt = 0;
      for (std::size_t i = 0; i < n1; ++i) nx = tmax(nx, tabs(L[i]));
      for (std::size_t j = 0; j < n2; ++j) ny = tmax(ny, tabs(R[j]));
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) nt = tmax<T>(nt, tabs<T>(L[i] * R[j]));
      return nt == nx * ny;
    }
    case ClaimId::disjointness_preservation: {
      const T *x1 = L, *x2 = L + n1, *y1 = R, *y2 = R + n2;
      for (std::size_t i = 0; i < n1; ++i)
        if (tmin(tabs(x1[i]), tabs(x2[i])) != 0) return true;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          if (tmin<T>(tabs<T>(x1[i] * y1[j]), tabs<T>(x2[i] * y2[j])) != 0) return false;
      return true;
    }
    case ClaimId::refinement_inclusion: break;
  }
  throw Error(ErrorKind::invalid_argument, "claim has no coordinate predicate");
}

/// All tuples of `count` entries from [0, nv), in lexicographic order.
inline std::vector<std::int8_t> odometer(std::size_t count, std::size_t nv) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < count; ++k) total *= nv;
  std::vector<std::int8_t> out;
  out.reserve(total * count);
  std::vector<std::int8_t> cur(count, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    out.insert(out.end(), cur.begin(), cur.end());
    for (std::size_t k = count; k-- > 0;) {
      if (++cur[k] < static_cast<std::int8_t>(nv)) break;
      cur[k] = 0;
    }
  }
  return out;
}

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

inline std::vector<Rational> effective_values(const AuditClaim& claim) {
  std::vector<Rational> vals = claim.values;
  if (claim_shape(claim.id).signed_values)
    for (const auto& v : claim.values)
      if (v > 0) vals.push_back(-v);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

inline Matrix to_matrix(const Element& z) {
  const Space& t = z.space();
  Matrix out(t.left->points.size(), std::vector<Rational>(t.right->points.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out[i].size(); ++j)
      out[i][j] = z.at({static_cast<std::int64_t>(i) + 1, static_cast<std::int64_t>(j) + 1});
  return out;
}

/// Rebuilds the violation through lattice-core and fremlin and returns its two
/// sides; throws when the primary modules do not confirm it.
inline AuditWitness revalidate(const AuditClaim& claim, const std::vector<std::vector<Rational>>& left,
                               const std::vector<std::vector<Rational>>& right, const Rational& eps) {
  const auto shape = claim_shape(claim.id);
  const SpacePtr e = make_grid("E", claim.rows), f = make_grid("F", claim.cols);
  const SpacePtr t = tensor_space(e, f);
  std::vector<Element> l, r;
  for (const auto& v : left) l.push_back(from_values(e, v));
  for (const auto& v : right) r.push_back(from_values(f, v));
  AuditWitness w;
  for (std::size_t k = 0; k < left.size(); ++k) w.args.emplace_back(shape.left[k], left[k]);
  for (std::size_t k = 0; k < right.size(); ++k) w.args.emplace_back(shape.right[k], right[k]);
  std::sort(w.args.begin(), w.args.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  bool confirmed = false;
  switch (claim.id) {
    case ClaimId::wedge_equality:
    case ClaimId::wedge_lower_bound: {
      const auto cmp = meet_of_elementary(l[0], r[0], l[1], r[1], t);
      w.lhs = to_matrix(cmp.lhs);
      w.rhs = to_matrix(cmp.rhs);
      confirmed = claim.id == ClaimId::wedge_equality ? !cmp.equal : !leq(cmp.rhs, cmp.lhs);
      break;
    }
    case ClaimId::mixed_upper_bound: {
      w.lhs = to_matrix(lat_inf(tensor(l[0], r[0], t), tensor(l[1], r[1], t)));
      w.rhs = to_matrix(tensor(lat_inf(l[0], l[1]), lat_sup(r[0], r[1]), t));
      confirmed = !mixed_bound_check(l[0], r[0], l[1], r[1], t);
      break;
    }
    case ClaimId::dichotomy: {
      w.lhs = to_matrix(tensor(l[0], r[0], t));
      w.rhs = to_matrix(tensor(l[1], r[1], t));
      const auto dich = dominance_dichotomy(l[0], r[0], l[1], r[1], t);
      confirmed = !dich.a_le_c && !dich.b_le_d;
      break;
    }
    case ClaimId::cross_norm: {
      const Rational lhs = norm(tensor(l[0], r[0], t)).value;
      const Rational rhs = norm(l[0]).value * norm(r[0]).value;
      w.lhs = {{lhs}};
      w.rhs = {{rhs}};
      confirmed = lhs != rhs;
      break;
    }
    case ClaimId::disjointness_preservation: {
      const Element p = tensor(l[0], r[0], t), q = tensor(l[1], r[1], t);
      w.lhs = to_matrix(lat_inf(lat_abs(p), lat_abs(q)));
      w.rhs = to_matrix(zero(t));
      confirmed = disjoint(l[0], l[1]) && !disjoint(p, q);
      break;
    }
    case ClaimId::refinement_inclusion: {
      const SolidNbhd u(e, UnitSpec::one(), eps), v(f, UnitSpec::one(), eps);
      const SolidNbhd w_un(t, UnitSpec::tensor(UnitSpec::one(), UnitSpec::one()), eps);
      const Element ab = tensor(l[0], r[0], t);
      w.lhs = {{w_un.value(ab).value}};
      w.rhs = {{eps}};
      confirmed = u.contains(l[0]) && v.contains(r[0]) && !w_un.contains(ab);
      break;
    }
  }
  if (!confirmed)
    throw Error(ErrorKind::invalid_argument,
                std::string("audit witness for ") + to_string(claim.id) + " failed re-validation");
  return w;
}

inline void record(AuditResult& res, const AuditOptions& opt, const AuditClaim& claim,
                   std::vector<std::vector<Rational>> left, std::vector<std::vector<Rational>> right,
                   const Rational& eps = 0) {
  ++res.violations;
  res.status = AuditStatus::falsified;
  if (res.witnesses.size() < opt.max_witnesses) res.witnesses.push_back(revalidate(claim, left, right, eps));
}

inline std::vector<std::vector<Rational>> split(const std::vector<Rational>& vals, const std::int8_t* idx,
                                                std::size_t args, std::size_t n) {
  std::vector<std::vector<Rational>> out(args, std::vector<Rational>(n));
  for (std::size_t a = 0; a < args; ++a)
    for (std::size_t k = 0; k < n; ++k) out[a][k] = vals[static_cast<std::size_t>(idx[a * n + k])];
  return out;
}

/// Exhaustive run over integer-scaled values: every claim except refinement
/// is homogeneous, so clearing denominators preserves it.
inline void exhaustive_coordinates(const AuditClaim& claim, const AuditOptions& opt, AuditResult& res) {
  const auto shape = claim_shape(claim.id);
  const auto vals = effective_values(claim);
  const std::size_t nv = vals.size();
  if (nv > 127) throw Error(ErrorKind::search_overflow, "value set too large for exhaustive audit");
  const std::size_t lc = shape.left.size() * claim.rows, rc = shape.right.size() * claim.cols;
  const std::uint64_t total = checked_power(nv, lc + rc, opt.cap);
  if (total > opt.cap)
    throw Error(ErrorKind::search_overflow, std::string("exhaustive audit of ") + to_string(claim.id) +
                                                " exceeds the search cap of " + std::to_string(opt.cap) + " tuples");
  Integer den = 1;
  for (const auto& v : vals) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
  std::vector<std::int64_t> scaled;
  for (const auto& v : vals) scaled.push_back(Rational(v * den).convert_to<std::int64_t>());

  const auto lt = odometer(lc, nv), rt = odometer(rc, nv);
  const std::size_t nl = lc ? lt.size() / lc : 1, nr = rc ? rt.size() / rc : 1;
  res.checked = static_cast<std::uint64_t>(nl) * nr;
  auto report = [&](std::size_t p, std::size_t q) {
    ++res.violations;
    res.status = AuditStatus::falsified;
    if (res.witnesses.size() < opt.max_witnesses)
      res.witnesses.push_back(revalidate(claim, split(vals, lt.data() + p * lc, shape.left.size(), claim.rows),
                                         split(vals, rt.data() + q * rc, shape.right.size(), claim.cols), 0));
  };
  auto sv = [&](std::int8_t k) { return scaled[static_cast<std::size_t>(k)]; };

  if (shape.left.size() != 2 || shape.right.size() != 2) {
    std::vector<std::int64_t> L(lc), R(rc);
    for (std::size_t p = 0; p < nl; ++p) {
      for (std::size_t k = 0; k < lc; ++k) L[k] = sv(lt[p * lc + k]);
      for (std::size_t q = 0; q < nr; ++q) {
        for (std::size_t k = 0; k < rc; ++k) R[k] = sv(rt[q * rc + k]);
        if (!holds<std::int64_t>(claim.id, L.data(), R.data(), claim.rows, claim.cols)) report(p, q);
      }
    }
    return;
  }

  // Two arguments per side: each coordinate pair (x0_i, x1_i), (y0_j, y1_j)
  // is coded as one of nv^2 symbols and the entry conditions are tabulated.
  const std::size_t ns = nv * nv;
  std::vector<std::uint8_t> entry(ns * ns), row_flag(ns), col_flag(ns);
  for (std::size_t r = 0; r < ns; ++r) {
    const std::int64_t x0 = scaled[r / nv], x1 = scaled[r % nv];
    row_flag[r] = claim.id == ClaimId::dichotomy ? x0 <= x1 : std::min(std::abs(x0), std::abs(x1)) == 0;
    col_flag[r] = x0 <= x1;
    for (std::size_t c = 0; c < ns; ++c) {
      const std::int64_t y0 = scaled[c / nv], y1 = scaled[c % nv];
      bool ok = false;
      if (claim.id == ClaimId::dichotomy) ok = x0 * y0 <= x1 * y1;
      else if (claim.id == ClaimId::disjointness_preservation) ok = std::min(std::abs(x0 * y0), std::abs(x1 * y1)) == 0;
      else {
        const std::int64_t L[2]{x0, x1}, R[2]{y0, y1};
        ok = holds<std::int64_t>(claim.id, L, R, 1, 1);
      }
      entry[r * ns + c] = ok;
    }
  }
  const std::size_t n1 = claim.rows, n2 = claim.cols;
  std::vector<std::uint32_t> col_codes(nr * n2);
  std::vector<std::uint8_t> col_all(nr);
  for (std::size_t q = 0; q < nr; ++q) {
    bool all = true;
    for (std::size_t j = 0; j < n2; ++j) {
      const auto code = static_cast<std::uint32_t>(rt[q * rc + j] * nv + rt[q * rc + n2 + j]);
      col_codes[q * n2 + j] = code;
      all = all && col_flag[code];
    }
    col_all[q] = all;
  }
  std::vector<const std::uint8_t*> rows_at(n1);
  for (std::size_t p = 0; p < nl; ++p) {
    bool row_all = true;
    for (std::size_t i = 0; i < n1; ++i) {
      const auto code = static_cast<std::size_t>(lt[p * lc + i] * nv + lt[p * lc + n1 + i]);
      rows_at[i] = entry.data() + code * ns;
      row_all = row_all && row_flag[code];
    }
    if (claim.id == ClaimId::disjointness_preservation && !row_all) continue;
    for (std::size_t q = 0; q < nr; ++q) {
      const std::uint32_t* cc = col_codes.data() + q * n2;
      bool all = true;
      for (std::size_t i = 0; i < n1 && all; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          if (!rows_at[i][cc[j]]) {
            all = false;
            break;
          }
      const bool ok = claim.id == ClaimId::dichotomy ? (!all || row_all || col_all[q]) : all;
      if (!ok) report(p, q);
    }
  }
}

/// a, b with entries k * eps / 4 (k < 4 keeps them inside the factor
/// neighborhoods) checked against the un-neighborhood of the tensor.
inline void exhaustive_refinement(const AuditClaim& claim, const AuditOptions& opt, AuditResult& res) {
  const std::size_t n = claim.rows + claim.cols;
  for (const auto& eps : claim.eps) {
    if (eps <= 0 || eps >= 1) throw Error(ErrorKind::invalid_argument, "refinement thresholds must lie in (0, 1)");
    if (checked_power(4, n, opt.cap) > opt.cap) throw Error(ErrorKind::search_overflow, "refinement audit too large");
    const auto tuples = odometer(n, 4);
    for (std::size_t p = 0; p < tuples.size() / n; ++p) {
      std::vector<Rational> a(claim.rows), b(claim.cols);
      for (std::size_t i = 0; i < claim.rows; ++i) a[i] = eps * static_cast<int>(tuples[p * n + i]) / 4;
      for (std::size_t j = 0; j < claim.cols; ++j) b[j] = eps * static_cast<int>(tuples[p * n + claim.rows + j]) / 4;
      Rational top = 0;
      for (const auto& x : a)
        for (const auto& y : b) top = rmax(top, rmin(Rational(x * y), Rational(1)));
      ++res.checked;
      if (!(top < eps)) record(res, opt, claim, {a}, {b}, eps);
    }
  }
}

inline void randomized(const AuditClaim& claim, const AuditOptions& opt, AuditResult& res) {
  const auto shape = claim_shape(claim.id);
  Rng rng(opt.seed);
  Rational top_value = 0;
  for (const auto& v : claim.values) top_value = rmax(top_value, abs(v));
  const Integer ceil_top = (boost::multiprecision::numerator(top_value) + boost::multiprecision::denominator(top_value) - 1) /
                           boost::multiprecision::denominator(top_value);
  const long max_value = std::max(1L, ceil_top.convert_to<long>());
  for (std::int64_t s = 0; s < opt.trials; ++s) {
    ++res.checked;
    if (claim.id == ClaimId::refinement_inclusion) {
      const Rational eps = claim.eps[rng.below(claim.eps.size())];
      std::vector<Rational> a(claim.rows), b(claim.cols);
      for (auto& x : a) x = rng.coin() ? Rational(0) : Rational(eps * rng.unit_fraction());
      for (auto& y : b) y = rng.coin() ? Rational(0) : Rational(eps * rng.unit_fraction());
      Rational top = 0;
      for (const auto& x : a)
        for (const auto& y : b) top = rmax(top, rmin(Rational(x * y), Rational(1)));
      if (!(top < eps)) record(res, opt, claim, {a}, {b}, eps);
      continue;
    }
    std::vector<Rational> L(shape.left.size() * claim.rows), R(shape.right.size() * claim.cols);
    auto draw = [&] { return shape.signed_values ? rng.signed_value(max_value) : rng.nonneg(max_value); };
    for (auto& x : L) x = draw();
    for (auto& y : R) y = draw();
    if (claim.id == ClaimId::dichotomy && rng.coin()) {
      // bias toward dominated tuples: c = a + slack, d = b + slack
      for (std::size_t i = 0; i < claim.rows; ++i) L[claim.rows + i] = L[i] + rng.nonneg(1, 4) * static_cast<long>(rng.below(2));
      for (std::size_t j = 0; j < claim.cols; ++j) R[claim.cols + j] = R[j] + rng.nonneg(1, 4) * static_cast<long>(rng.below(2));
    }
    if (!holds<Rational>(claim.id, L.data(), R.data(), claim.rows, claim.cols)) {
      std::vector<std::vector<Rational>> left(shape.left.size()), right(shape.right.size());
      for (std::size_t a = 0; a < left.size(); ++a)
        left[a].assign(L.begin() + static_cast<std::ptrdiff_t>(a * claim.rows),
                       L.begin() + static_cast<std::ptrdiff_t>((a + 1) * claim.rows));
      for (std::size_t b = 0; b < right.size(); ++b)
        right[b].assign(R.begin() + static_cast<std::ptrdiff_t>(b * claim.cols),
                        R.begin() + static_cast<std::ptrdiff_t>((b + 1) * claim.cols));
      record(res, opt, claim, std::move(left), std::move(right));
    }
  }
}

}  // namespace detail

/// Decides a claim on its finite search space, or on seeded random tuples.
inline AuditResult audit(const AuditClaim& claim, const AuditOptions& opt = {}) {
  if (claim.rows < 1 || claim.cols < 1) throw Error(ErrorKind::invalid_argument, "audit dimensions must be >= 1");
  if (claim.values.empty()) throw Error(ErrorKind::invalid_argument, "audit value set is empty");
  for (const auto& v : claim.values)
    if (v < 0) throw Error(ErrorKind::invalid_argument, "audit value set must be nonnegative");
  if (opt.mode == AuditMode::randomized && opt.trials < 1)
    throw Error(ErrorKind::invalid_argument, "randomized audit needs trials >= 1");
  AuditResult res;
  res.id = claim.id;
  res.mode = opt.mode;
  res.rows = claim.rows;
  res.cols = claim.cols;
  res.values = claim.values;
  if (opt.mode == AuditMode::randomized) {
    res.trials = opt.trials;
    res.seed = opt.seed;
    detail::randomized(claim, opt, res);
  } else if (claim.id == ClaimId::refinement_inclusion) {
    detail::exhaustive_refinement(claim, opt, res);
  } else {
    detail::exhaustive_coordinates(claim, opt, res);
  }
  return res;
}

}  // namespace riesz
