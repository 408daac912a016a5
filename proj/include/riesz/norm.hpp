#pragma once

#include "riesz/element.hpp"

namespace riesz {

/// Norm value. For l2 spaces `value` holds the exact squared norm so that
/// comparisons stay rational.
struct NormValue {
  Rational value;
  bool squared = false;

  /// ||x|| < eps.
  bool below(const Rational& eps) const { return squared ? value < eps * eps : value < eps; }
  /// Threshold in the same units as `value`.
  Rational scale_threshold(const Rational& eps) const { return squared ? Rational(eps * eps) : eps; }

  friend bool operator==(const NormValue&, const NormValue&) = default;
};

inline NormValue norm(const Element& x) {
  switch (x.space().norm_tag) {
    case NormTag::sup: {
      Rational m = abs(x.tail());
      for (const auto& [k, v] : x.coords()) m = rmax(m, abs(v));
      return {m, false};
    }
    case NormTag::l1: {
      Rational s = 0;
      for (const auto& [k, v] : x.coords()) s += abs(v);
      return {s, false};
    }
    case NormTag::l2: {
      Rational s = 0;
      for (const auto& [k, v] : x.coords()) s += v * v;
      return {s, true};
    }
  }
  return {};
}

}  // namespace riesz
