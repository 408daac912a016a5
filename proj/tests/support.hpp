#pragma once

// Generators and independent reference computations shared by the suites.
// Reference values here are computed from plain closed forms, never through
// the checkers under test.

#include "riesz/convergence.hpp"
#include "riesz/oracle.hpp"
#include "riesz/random.hpp"
#include "riesz/topology.hpp"

#include <string>
#include <vector>

namespace riesz::testing {

inline Rational q(long p, long d = 1) { return rat(p, d); }

/// One coordinate sequence k -> sign(n) * c / n^p, or a constant, in closed
/// form both as a coefficient string and as a direct evaluator.
struct CoordLaw {
  enum class Kind { zero, power, alternating, constant, toggle };
  Kind kind = Kind::zero;
  Rational c = 1;
  int p = 1;

  std::string text() const {
    const std::string cs = "(" + to_string(c) + ")";
    switch (kind) {
      case Kind::zero: return "0";
      case Kind::power: return cs + "/n^" + std::to_string(p);
      case Kind::alternating: return "(-1)^n*" + cs + "/n^" + std::to_string(p);
      case Kind::constant: return cs;
      case Kind::toggle: return cs + "*(1+(-1)^n)/2";
    }
    return "0";
  }

  Rational value(std::int64_t n) const {
    Rational np = 1;
    for (int k = 0; k < p; ++k) np *= n;
    switch (kind) {
      case Kind::zero: return 0;
      case Kind::power: return c / np;
      case Kind::alternating: return (n % 2 == 0 ? c : Rational(-c)) / np;
      case Kind::constant: return c;
      case Kind::toggle: return n % 2 == 0 ? c : Rational(0);
    }
    return 0;
  }
};

struct GridTrace {
  SpacePtr space;
  std::vector<CoordLaw> laws;

  TraceSpec spec() const {
    std::vector<Coef> cs;
    for (const auto& l : laws) cs.emplace_back(l.text());
    return TraceSpec::pointwise(space, std::move(cs));
  }

  /// |x_k(n)| < tol at every coordinate and every n of the window.
  bool pointwise_null(std::int64_t horizon, std::int64_t window, const Rational& tol) const {
    for (std::int64_t n = horizon - window + 1; n <= horizon; ++n)
      for (const auto& l : laws)
        if (!(abs(l.value(n)) < tol)) return false;
    return true;
  }
};

/// Mix of null and non-null coordinate laws on a grid of 1..max_points.
inline GridTrace random_grid_trace(Rng& rng, std::size_t max_points = 5) {
  GridTrace t;
  const auto points = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_points)));
  t.space = make_grid("K" + std::to_string(points), points);
  for (std::size_t k = 0; k < points; ++k) {
    CoordLaw l;
    const auto pick = rng.below(10);
    l.c = Rational(rng.between(1, 6)) / Rational(rng.between(1, 2));
    l.p = static_cast<int>(rng.between(1, 3));
    if (pick < 2) l.kind = CoordLaw::Kind::zero;
    else if (pick < 5) l.kind = CoordLaw::Kind::power;
    else if (pick < 7) l.kind = CoordLaw::Kind::alternating;
    else if (pick < 9) l.kind = CoordLaw::Kind::constant;
    else l.kind = CoordLaw::Kind::toggle;
    if (rng.below(4) == 0) l.c = rng.unit_fraction(64);
    t.laws.push_back(l);
  }
  return t;
}

/// Grid trace whose coordinates either decay at least like 1/n^3 or stay
/// at or above 1/4 in modulus.
inline GridTrace random_separated_trace(Rng& rng, std::size_t max_points = 5) {
  GridTrace t;
  const auto points = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_points)));
  t.space = make_grid("K" + std::to_string(points), points);
  for (std::size_t k = 0; k < points; ++k) {
    CoordLaw l;
    l.c = Rational(rng.between(1, 12)) / 4;
    switch (rng.below(5)) {
      case 0: l.kind = CoordLaw::Kind::zero; break;
      case 1: l.kind = CoordLaw::Kind::power; l.p = static_cast<int>(rng.between(3, 4)); break;
      case 2: l.kind = CoordLaw::Kind::alternating; l.p = 3; break;
      case 3: l.kind = CoordLaw::Kind::constant; break;
      default: l.kind = CoordLaw::Kind::alternating; l.p = 0; break;
    }
    t.laws.push_back(l);
  }
  return t;
}

/// Random element with values in [-2, 2] (or [0, 2]).
inline Element random_vector(Rng& rng, const SpacePtr& s, bool nonneg = false) {
  return random_element(rng, s, nonneg);
}

/// Random positive unit on a factor space.
inline UnitSpec random_unit(Rng& rng, const SpacePtr& s) {
  if (s->kind == SpaceKind::seq_model) {
    if (rng.coin()) return UnitSpec::geometric();
    Element::Coords c;
    for (std::int64_t k = 1; k <= 4; ++k) c[{k, 0}] = Rational(rng.between(1, 8)) / 4;
    return UnitSpec::of(Element(s, std::move(c)));
  }
  if (rng.coin()) return UnitSpec::one();
  Element::Coords c;
  for (const auto& k : all_indices(*s)) c[k] = Rational(rng.between(1, 8)) / 4;
  return UnitSpec::of(Element(s, std::move(c)));
}

inline SolidNbhd random_nbhd(Rng& rng, const SpacePtr& s) {
  return SolidNbhd(s, random_unit(rng, s), Rational(rng.between(1, 12)) / 8);
}

/// A z with |z| <= a (x) b for a random witness inside the factor
/// neighborhoods; returns (z, witness).
inline std::pair<Element, Rank1Witness> random_member(Rng& rng, const TensorNbhd& w) {
  Element a = detail::random_member(rng, w.u);
  Element b = detail::random_member(rng, w.v);
  const Element dom = tensor(a, b, w.space);
  Element::Coords zc;
  for (const auto& [k, val] : dom.coords()) {
    const Rational f = rng.nonneg(1, 6);
    zc[k] = rng.coin() ? Rational(-f * val) : Rational(f * val);
  }
  return {Element(w.space, std::move(zc)), Rank1Witness{std::move(a), std::move(b)}};
}

/// Factor spaces used across suites.
inline std::vector<SpacePtr> factor_spaces() {
  return {make_grid("G2", 2), make_grid("G3", 3), make_grid("G4", 4), make_seq("S1", NormTag::l1),
          make_seq("S2", NormTag::l2), make_seq("S0", NormTag::sup)};
}

}  // namespace riesz::testing
