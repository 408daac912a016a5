#pragma once

#include "riesz/element.hpp"

#include <memory>

namespace riesz {

/// Linear functional on a model lattice. `product` is f (x) g on a tensor
/// grid: (f (x) g)(z) = sum f_i g_j z_ij.
struct Functional {
  enum class Kind { coordinate, ones_sum, weighted, product };

  Kind kind = Kind::ones_sum;
  Index index{};
  std::map<Index, Rational> weights;
  std::shared_ptr<const Functional> left;
  std::shared_ptr<const Functional> right;

  static Functional coordinate(Index idx) {
    Functional f;
    f.kind = Kind::coordinate;
    f.index = idx;
    return f;
  }
  static Functional coordinate(std::int64_t k) { return coordinate(Index{k, 0}); }
  static Functional ones_sum() { return {}; }
  static Functional weighted(std::map<Index, Rational> w) {
    Functional f;
    f.kind = Kind::weighted;
    f.weights = std::move(w);
    return f;
  }
  static Functional product(Functional f, Functional g) {
    Functional p;
    p.kind = Kind::product;
    p.left = std::make_shared<const Functional>(std::move(f));
    p.right = std::make_shared<const Functional>(std::move(g));
    return p;
  }

  /// Weight on one factor coordinate.
  Rational weight(const Index& k) const {
    switch (kind) {
      case Kind::coordinate: return k == index ? Rational(1) : Rational(0);
      case Kind::ones_sum: return 1;
      case Kind::weighted: {
        auto it = weights.find(k);
        return it == weights.end() ? Rational(0) : it->second;
      }
      case Kind::product: return left->weight({k.i, 0}) * right->weight({k.j, 0});
    }
    return 0;
  }

  /// True when only finitely many weights are nonzero.
  bool finite_weights() const {
    switch (kind) {
      case Kind::coordinate:
      case Kind::weighted: return true;
      case Kind::ones_sum: return false;
      case Kind::product: return left->finite_weights() && right->finite_weights();
    }
    return false;
  }

  bool positive() const {
    switch (kind) {
      case Kind::coordinate:
      case Kind::ones_sum: return true;
      case Kind::weighted:
        for (const auto& [k, w] : weights)
          if (w < 0) return false;
        return true;
      case Kind::product: return left->positive() && right->positive();
    }
    return false;
  }

  friend bool operator==(const Functional& a, const Functional& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::coordinate: return a.index == b.index;
      case Kind::ones_sum: return true;
      case Kind::weighted: return a.weights == b.weights;
      case Kind::product: return *a.left == *b.left && *a.right == *b.right;
    }
    return false;
  }
};

namespace detail {

inline void enumerate_weight_support(const Functional& f, const std::function<void(const Index&)>& visit) {
  switch (f.kind) {
    case Functional::Kind::coordinate: visit(f.index); return;
    case Functional::Kind::weighted:
      for (const auto& [k, w] : f.weights) visit(k);
      return;
    case Functional::Kind::product:
      enumerate_weight_support(*f.left, [&](const Index& a) {
        enumerate_weight_support(*f.right, [&](const Index& b) { visit({a.i, b.i}); });
      });
      return;
    case Functional::Kind::ones_sum: return;
  }
}

inline void validate_functional(const Space& s, const Functional& f) {
  switch (f.kind) {
    case Functional::Kind::coordinate:
      if (!valid_index(s, f.index)) throw Error(ErrorKind::invalid_functional, "coordinate functional out of range");
      return;
    case Functional::Kind::weighted:
      for (const auto& [k, w] : f.weights)
        if (!valid_index(s, k)) throw Error(ErrorKind::invalid_functional, "weighted functional index out of range");
      return;
    case Functional::Kind::product:
      if (s.kind != SpaceKind::tensor_grid)
        throw Error(ErrorKind::invalid_functional, "product functional needs a tensor grid");
      validate_functional(*s.left, *f.left);
      validate_functional(*s.right, *f.right);
      return;
    case Functional::Kind::ones_sum: return;
  }
}

}  // namespace detail

/// f(x). Functionals with infinitely many nonzero weights need x to have a
/// zero tail.
inline Rational apply_functional(const Functional& f, const Element& x) {
  detail::validate_functional(x.space(), f);
  Rational total = 0;
  if (f.finite_weights()) {
    detail::enumerate_weight_support(f, [&](const Index& k) { total += f.weight(k) * x.at(k); });
    return total;
  }
  if (x.tail() != 0)
    throw Error(ErrorKind::invalid_functional, "ones-sum functional is undefined on an element with nonzero tail");
  for (const auto& [k, v] : x.coords()) total += f.weight(k) * v;
  return total;
}

}  // namespace riesz
