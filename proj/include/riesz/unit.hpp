#pragma once

#include "riesz/norm.hpp"

#include <memory>
#include <optional>
#include <set>

namespace riesz {

/// Designated positive unit of a model lattice.
///
/// `geometric` is the quasi-interior point k -> 2^(-k) of a sequence model;
/// `tensor` is u (x) v on a tensor grid; `join` is the lattice supremum of two
/// units (used when intersecting neighborhoods).
struct UnitSpec {
  enum class Kind { constant_one, geometric, explicit_element, tensor, join };

  Kind kind = Kind::constant_one;
  std::optional<Element> element;
  std::shared_ptr<const UnitSpec> first;
  std::shared_ptr<const UnitSpec> second;

  static UnitSpec one() { return {}; }
  static UnitSpec geometric() {
    UnitSpec u;
    u.kind = Kind::geometric;
    return u;
  }
  static UnitSpec of(Element e) {
    UnitSpec u;
    u.kind = Kind::explicit_element;
    u.element = std::move(e);
    return u;
  }
  static UnitSpec tensor(UnitSpec u, UnitSpec v) {
    UnitSpec t;
    t.kind = Kind::tensor;
    t.first = std::make_shared<const UnitSpec>(std::move(u));
    t.second = std::make_shared<const UnitSpec>(std::move(v));
    return t;
  }
  static UnitSpec join(UnitSpec u, UnitSpec v) {
    UnitSpec t;
    t.kind = Kind::join;
    t.first = std::make_shared<const UnitSpec>(std::move(u));
    t.second = std::make_shared<const UnitSpec>(std::move(v));
    return t;
  }

  friend bool operator==(const UnitSpec& a, const UnitSpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::constant_one:
      case Kind::geometric: return true;
      case Kind::explicit_element: return *a.element == *b.element;
      case Kind::tensor:
      case Kind::join: return *a.first == *b.first && *a.second == *b.second;
    }
    return false;
  }
};

inline void validate_unit(const Space& s, const UnitSpec& u) {
  auto bad = [&](const std::string& why) { return Error(ErrorKind::invalid_unit, why + " (space '" + s.id + "')"); };
  switch (u.kind) {
    case UnitSpec::Kind::constant_one:
      if (s.kind == SpaceKind::seq_model) throw bad("constant-one unit is not an element of a sequence model");
      if (s.kind == SpaceKind::tensor_grid) {
        validate_unit(*s.left, u);
        validate_unit(*s.right, u);
      }
      return;
    case UnitSpec::Kind::geometric:
      if (s.kind != SpaceKind::seq_model) throw bad("geometric unit is only valid on a sequence model");
      return;
    case UnitSpec::Kind::explicit_element:
      require_same_space(s, u.element->space());
      if (!is_nonnegative(*u.element) || u.element->is_zero()) throw bad("explicit unit must be positive and nonzero");
      return;
    case UnitSpec::Kind::tensor:
      if (s.kind != SpaceKind::tensor_grid) throw bad("tensor unit needs a tensor grid");
      validate_unit(*s.left, *u.first);
      validate_unit(*s.right, *u.second);
      return;
    case UnitSpec::Kind::join:
      validate_unit(s, *u.first);
      validate_unit(s, *u.second);
      return;
  }
}

/// Value of the unit at one coordinate.
inline Rational unit_value(const Space& s, const UnitSpec& u, const Index& idx) {
  switch (u.kind) {
    case UnitSpec::Kind::constant_one: return 1;
    case UnitSpec::Kind::geometric: return pow2_neg(idx.i);
    case UnitSpec::Kind::explicit_element: return u.element->at(idx);
    case UnitSpec::Kind::tensor:
      return unit_value(*s.left, *u.first, {idx.i, 0}) * unit_value(*s.right, *u.second, {idx.j, 0});
    case UnitSpec::Kind::join: return rmax(unit_value(s, *u.first, idx), unit_value(s, *u.second, idx));
  }
  return 0;
}

/// Value taken outside the unit's finite support (meaningful when one exists).
inline Rational unit_tail(const Space& s, const UnitSpec& u) {
  switch (u.kind) {
    case UnitSpec::Kind::constant_one: return 1;
    case UnitSpec::Kind::geometric: return 0;
    case UnitSpec::Kind::explicit_element: return u.element->tail();
    case UnitSpec::Kind::tensor: return unit_tail(*s.left, *u.first) * unit_tail(*s.right, *u.second);
    case UnitSpec::Kind::join: return rmax(unit_tail(s, *u.first), unit_tail(s, *u.second));
  }
  return 0;
}

/// Coordinates where the unit may differ from its tail, when that set is finite.
inline std::optional<std::set<Index>> unit_support(const Space& s, const UnitSpec& u) {
  if (is_finite(s)) {
    auto all = all_indices(s);
    return std::set<Index>(all.begin(), all.end());
  }
  switch (u.kind) {
    case UnitSpec::Kind::constant_one:
      if (allows_tail(s)) return std::set<Index>{};
      return std::nullopt;
    case UnitSpec::Kind::geometric: return std::nullopt;
    case UnitSpec::Kind::explicit_element: {
      std::set<Index> out;
      for (const auto& [k, v] : u.element->coords()) out.insert(k);
      return out;
    }
    case UnitSpec::Kind::tensor: {
      auto su = unit_support(*s.left, *u.first);
      auto sv = unit_support(*s.right, *u.second);
      if (!su || !sv) return std::nullopt;
      const bool tails_zero = unit_tail(*s.left, *u.first) == 0 && unit_tail(*s.right, *u.second) == 0;
      const bool constants = su->empty() && sv->empty();
      if (!tails_zero && !constants) return std::nullopt;
      std::set<Index> out;
      for (const auto& a : *su)
        for (const auto& b : *sv) out.insert({a.i, b.i});
      return out;
    }
    case UnitSpec::Kind::join: {
      auto a = unit_support(s, *u.first);
      auto b = unit_support(s, *u.second);
      if (!a || !b) return std::nullopt;
      a->insert(b->begin(), b->end());
      return a;
    }
  }
  return std::nullopt;
}

/// The element the unit denotes, when it has a finite description.
inline Element unit_element(const SpacePtr& s, const UnitSpec& u) {
  validate_unit(*s, u);
  auto support = unit_support(*s, u);
  if (!support) throw Error(ErrorKind::unrepresentable, "unit has no finite description on '" + s->id + "'");
  Element::Coords c;
  for (const auto& k : *support) c[k] = unit_value(*s, u, k);
  return Element(s, std::move(c), allows_tail(*s) ? unit_tail(*s, u) : Rational(0));
}

/// |x| ^ e for the unit e. For units without finite support the meet is
/// computed on the support of x, which is exact because x has a zero tail.
inline Element unit_meet(const Element& x, const UnitSpec& u) {
  const Space& s = x.space();
  validate_unit(s, u);
  Element::Coords out;
  if (x.tail() == 0) {
    for (const auto& [k, v] : x.coords()) out.emplace_hint(out.end(), k, rmin(abs(v), unit_value(s, u, k)));
    return Element(x.space_ptr(), std::move(out));
  }
  auto support = unit_support(s, u);
  if (!support) throw Error(ErrorKind::unrepresentable, "cannot meet a nonzero-tail element with this unit");
  std::set<Index> keys = std::move(*support);
  for (const auto& [k, v] : x.coords()) keys.insert(k);
  for (const auto& k : keys) out.emplace_hint(out.end(), k, rmin(abs(x.at(k)), unit_value(s, u, k)));
  return Element(x.space_ptr(), std::move(out), rmin(abs(x.tail()), unit_tail(s, u)));
}

/// The seminorm rho_u(x) = || |x| ^ u ||.
inline NormValue rho(const Element& x, const UnitSpec& u) { return norm(unit_meet(x, u)); }

}  // namespace riesz
