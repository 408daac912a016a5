#pragma once

#include "riesz/space.hpp"

#include <functional>
#include <map>
#include <utility>

namespace riesz {

/// Vector in a model lattice: a finite coordinate map plus a tail value that
/// every unstored coordinate takes. Always kept canonical (no stored
/// coordinate equals the tail), so structural equality is lattice equality.
class Element {
 public:
  using Coords = std::map<Index, Rational>;

  explicit Element(SpacePtr space) : space_(std::move(space)) {
    if (!space_) throw Error(ErrorKind::invalid_element, "element needs a space");
  }

  Element(SpacePtr space, Coords coords, Rational tail = 0)
      : space_(std::move(space)), coords_(std::move(coords)), tail_(std::move(tail)) {
    if (!space_) throw Error(ErrorKind::invalid_element, "element needs a space");
    validate();
    canonicalize();
  }

  const SpacePtr& space_ptr() const { return space_; }
  const Space& space() const { return *space_; }
  const Coords& coords() const { return coords_; }
  const Rational& tail() const { return tail_; }

  Rational at(const Index& idx) const {
    auto it = coords_.find(idx);
    return it == coords_.end() ? tail_ : it->second;
  }

  bool is_zero() const { return coords_.empty() && tail_ == 0; }

  friend bool operator==(const Element& a, const Element& b) {
    return same_space(*a.space_, *b.space_) && a.tail_ == b.tail_ && a.coords_ == b.coords_;
  }

 private:
  void validate() const {
    for (const auto& [idx, v] : coords_)
      if (!valid_index(*space_, idx))
        throw Error(ErrorKind::invalid_index,
                    "coordinate (" + std::to_string(idx.i) + "," + std::to_string(idx.j) + ") invalid for '" +
                        space_->id + "'");
    if (tail_ != 0 && !allows_tail(*space_))
      throw Error(ErrorKind::invalid_element, "space '" + space_->id + "' requires a zero tail");
  }

  void canonicalize() {
    std::erase_if(coords_, [this](const auto& kv) { return kv.second == tail_; });
  }

  SpacePtr space_;
  Coords coords_;
  Rational tail_ = 0;
};

inline Element zero(const SpacePtr& s) { return Element(s); }

/// k-th standard unit vector (or the (i,j) matrix unit on a tensor grid).
inline Element basis(const SpacePtr& s, Index idx, const Rational& scale = 1) {
  return Element(s, {{idx, scale}});
}
inline Element basis(const SpacePtr& s, std::int64_t k, const Rational& scale = 1) {
  return basis(s, Index{k, 0}, scale);
}

/// Element from a dense list of coordinates 1..n.
inline Element from_values(const SpacePtr& s, const std::vector<Rational>& values, const Rational& tail = 0) {
  Element::Coords c;
  for (std::size_t k = 0; k < values.size(); ++k) c[{static_cast<std::int64_t>(k) + 1, 0}] = values[k];
  return Element(s, std::move(c), tail);
}

/// Element on a tensor grid from a dense row-major matrix.
inline Element from_matrix(const SpacePtr& s, const std::vector<std::vector<Rational>>& rows) {
  Element::Coords c;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      c[{static_cast<std::int64_t>(i) + 1, static_cast<std::int64_t>(j) + 1}] = rows[i][j];
  return Element(s, std::move(c));
}

/// Constant element (grids: every point; eventually-constant model: the tail).
inline Element constant(const SpacePtr& s, const Rational& c) {
  if (allows_tail(*s)) return Element(s, {}, c);
  if (!is_finite(*s)) throw Error(ErrorKind::unrepresentable, "constant element not representable in '" + s->id + "'");
  Element::Coords coords;
  for (const auto& idx : all_indices(*s)) coords[idx] = c;
  return Element(s, std::move(coords));
}

/// Coordinatewise combination over the union of supports, tails included.
template <typename Op>
Element combine(const Element& x, const Element& y, Op op) {
  require_same_space(x.space(), y.space());
  Element::Coords out;
  const auto& cx = x.coords();
  const auto& cy = y.coords();
  auto ix = cx.begin();
  auto iy = cy.begin();
  while (ix != cx.end() || iy != cy.end()) {
    if (iy == cy.end() || (ix != cx.end() && ix->first < iy->first)) {
      out.emplace_hint(out.end(), ix->first, op(ix->second, y.tail()));
      ++ix;
    } else if (ix == cx.end() || iy->first < ix->first) {
      out.emplace_hint(out.end(), iy->first, op(x.tail(), iy->second));
      ++iy;
    } else {
      out.emplace_hint(out.end(), ix->first, op(ix->second, iy->second));
      ++ix;
      ++iy;
    }
  }
  return Element(x.space_ptr(), std::move(out), op(x.tail(), y.tail()));
}

template <typename Op>
Element transform(const Element& x, Op op) {
  Element::Coords out;
  for (const auto& [k, v] : x.coords()) out.emplace_hint(out.end(), k, op(v));
  return Element(x.space_ptr(), std::move(out), op(x.tail()));
}

inline Element lat_sup(const Element& x, const Element& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return rmax(a, b); });
}

inline Element lat_inf(const Element& x, const Element& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return rmin(a, b); });
}

inline Element lat_abs(const Element& x) {
  return transform(x, [](const Rational& a) { return abs(a); });
}

inline Element operator+(const Element& x, const Element& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return Rational(a + b); });
}

inline Element operator-(const Element& x, const Element& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return Rational(a - b); });
}

inline Element operator-(const Element& x) {
  return transform(x, [](const Rational& a) { return Rational(-a); });
}

inline Element operator*(const Rational& c, const Element& x) {
  return transform(x, [&c](const Rational& a) { return Rational(c * a); });
}

inline Element positive_part(const Element& x) { return lat_sup(x, zero(x.space_ptr())); }
inline Element negative_part(const Element& x) { return lat_sup(-x, zero(x.space_ptr())); }

/// x <= y coordinatewise, tails included.
inline bool leq(const Element& x, const Element& y) {
  require_same_space(x.space(), y.space());
  if (x.tail() > y.tail()) return false;
  for (const auto& [k, v] : x.coords())
    if (v > y.at(k)) return false;
  for (const auto& [k, v] : y.coords())
    if (x.at(k) > v) return false;
  return true;
}

inline bool is_nonnegative(const Element& x) {
  if (x.tail() < 0) return false;
  for (const auto& [k, v] : x.coords())
    if (v < 0) return false;
  return true;
}

/// |x| ^ |y| = 0.
inline bool disjoint(const Element& x, const Element& y) {
  return lat_inf(lat_abs(x), lat_abs(y)).is_zero();
}

inline void require_nonnegative(const Element& x, const char* name) {
  if (!is_nonnegative(x))
    throw Error(ErrorKind::negative_input, std::string("argument '") + name + "' must be nonnegative");
}

}  // namespace riesz
