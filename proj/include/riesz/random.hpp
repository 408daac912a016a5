#pragma once

#include "riesz/element.hpp"

#include <cstdint>
#include <random>

namespace riesz {

/// Seeded generator with platform-independent draws (no std distributions,
/// whose output is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (engine_() & 1u) != 0; }

  /// p/q with q in [1, max_den], p in [0, max_value * q].
  Rational nonneg(long max_value = 2, long max_den = 8) {
    const long q = static_cast<long>(between(1, max_den));
    const long p = static_cast<long>(between(0, max_value * q));
    return Rational(p) / Rational(q);
  }

  Rational signed_value(long max_value = 2, long max_den = 8) {
    Rational r = nonneg(max_value, max_den);
    return coin() ? Rational(-r) : r;
  }

  /// Strictly inside (0, 1).
  Rational unit_fraction(long max_den = 16) {
    const long q = static_cast<long>(between(2, max_den));
    const long p = static_cast<long>(between(1, q - 1));
    return Rational(p) / Rational(q);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Random element of a finite grid, or supported on 1..support otherwise.
inline Element random_element(Rng& rng, const SpacePtr& s, bool nonneg, std::int64_t support = 4,
                              long max_value = 2, long max_den = 8) {
  Element::Coords c;
  auto draw = [&] { return nonneg ? rng.nonneg(max_value, max_den) : rng.signed_value(max_value, max_den); };
  if (is_finite(*s)) {
    for (const auto& k : all_indices(*s))
      if (rng.below(4) != 0) c[k] = draw();
  } else if (s->kind == SpaceKind::tensor_grid) {
    auto reach = [&](const SpacePtr& f) {
      return is_finite(*f) ? std::min<std::int64_t>(support, static_cast<std::int64_t>(grid_size(*f))) : support;
    };
    for (std::int64_t i = 1; i <= reach(s->left); ++i)
      for (std::int64_t j = 1; j <= reach(s->right); ++j)
        if (rng.below(3) == 0) c[{i, j}] = draw();
  } else {
    for (std::int64_t k = 1; k <= support; ++k)
      if (rng.below(3) != 0) c[{k, 0}] = draw();
  }
  return Element(s, std::move(c));
}

}  // namespace riesz
