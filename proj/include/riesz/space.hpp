#pragma once

#include "riesz/rational.hpp"

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace riesz {

enum class SpaceKind { finite_grid, seq_model, linf_model, tensor_grid };

/// Norm carried by a space. Grids and the eventually-constant model use sup.
enum class NormTag { sup, l1, l2 };

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

/// Concrete model lattice.
///
/// Coordinates are 1-based: grid points by position, sequence models by
/// natural number, tensor grids by a pair of factor coordinates.
struct Space {
  std::string id;
  SpaceKind kind = SpaceKind::finite_grid;
  std::vector<std::string> points;
  NormTag norm_tag = NormTag::sup;
  SpacePtr left;
  SpacePtr right;
};

inline bool same_space(const Space& a, const Space& b) {
  if (&a == &b) return true;
  if (a.id != b.id || a.kind != b.kind) return false;
  switch (a.kind) {
    case SpaceKind::finite_grid: return a.points == b.points;
    case SpaceKind::seq_model: return a.norm_tag == b.norm_tag;
    case SpaceKind::linf_model: return true;
    case SpaceKind::tensor_grid:
      return same_space(*a.left, *b.left) && same_space(*a.right, *b.right);
  }
  return false;
}

inline SpacePtr make_grid(std::string id, std::vector<std::string> points) {
  if (points.empty()) throw Error(ErrorKind::invalid_argument, "finite grid '" + id + "' needs at least one point");
  for (const auto& p : points)
    if (p.empty() || p.find(',') != std::string::npos)
      throw Error(ErrorKind::invalid_argument, "grid point label '" + p + "' must be non-empty and comma-free");
  auto s = std::make_shared<Space>();
  s->id = std::move(id);
  s->kind = SpaceKind::finite_grid;
  s->points = std::move(points);
  return s;
}

/// Grid with labels "1".."n".
inline SpacePtr make_grid(std::string id, std::size_t n) {
  std::vector<std::string> pts;
  for (std::size_t k = 1; k <= n; ++k) pts.push_back(std::to_string(k));
  return make_grid(std::move(id), std::move(pts));
}

inline SpacePtr make_seq(std::string id, NormTag tag) {
  auto s = std::make_shared<Space>();
  s->id = std::move(id);
  s->kind = SpaceKind::seq_model;
  s->norm_tag = tag;
  return s;
}

inline SpacePtr make_linf(std::string id) {
  auto s = std::make_shared<Space>();
  s->id = std::move(id);
  s->kind = SpaceKind::linf_model;
  return s;
}

inline SpacePtr make_tensor(std::string id, SpacePtr left, SpacePtr right) {
  if (!left || !right) throw Error(ErrorKind::invalid_argument, "tensor grid needs two factors");
  if (left->kind == SpaceKind::tensor_grid || right->kind == SpaceKind::tensor_grid)
    throw Error(ErrorKind::invalid_argument, "tensor grid factors cannot themselves be tensor grids");
  auto s = std::make_shared<Space>();
  s->id = std::move(id);
  s->kind = SpaceKind::tensor_grid;
  s->left = std::move(left);
  s->right = std::move(right);
  // projective norm: l1 (x) l1 = l1 on pairs; Hilbert-Schmidt for l2 (x) l2; sup otherwise
  auto tag = [](const Space& f) { return f.kind == SpaceKind::seq_model ? f.norm_tag : NormTag::sup; };
  const NormTag lt = tag(*s->left), rt = tag(*s->right);
  s->norm_tag = (lt == rt) ? lt : NormTag::sup;
  return s;
}

inline bool is_tensor(const Space& s) { return s.kind == SpaceKind::tensor_grid; }

/// Finite-dimensional: a grid, or a tensor grid of two grids.
inline bool is_finite(const Space& s) {
  if (s.kind == SpaceKind::finite_grid) return true;
  if (s.kind == SpaceKind::tensor_grid)
    return s.left->kind == SpaceKind::finite_grid && s.right->kind == SpaceKind::finite_grid;
  return false;
}

/// Spaces whose elements may carry a nonzero tail.
inline bool allows_tail(const Space& s) {
  if (s.kind == SpaceKind::linf_model) return true;
  if (s.kind == SpaceKind::tensor_grid)
    return s.left->kind == SpaceKind::linf_model && s.right->kind == SpaceKind::linf_model;
  return false;
}

inline std::size_t grid_size(const Space& s) { return s.points.size(); }

/// Coordinate of a model lattice; `j` is 0 outside tensor grids.
struct Index {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend auto operator<=>(const Index&, const Index&) = default;
};

inline bool valid_factor_index(const Space& s, std::int64_t k) {
  switch (s.kind) {
    case SpaceKind::finite_grid: return k >= 1 && k <= static_cast<std::int64_t>(s.points.size());
    case SpaceKind::seq_model:
    case SpaceKind::linf_model: return k >= 1;
    case SpaceKind::tensor_grid: return false;
  }
  return false;
}

inline bool valid_index(const Space& s, const Index& idx) {
  if (s.kind == SpaceKind::tensor_grid)
    return valid_factor_index(*s.left, idx.i) && valid_factor_index(*s.right, idx.j);
  return idx.j == 0 && valid_factor_index(s, idx.i);
}

/// All coordinates of a finite space in lexicographic order.
inline std::vector<Index> all_indices(const Space& s) {
  std::vector<Index> out;
  if (s.kind == SpaceKind::finite_grid) {
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(s.points.size()); ++k) out.push_back({k, 0});
  } else if (is_finite(s)) {
    for (std::int64_t a = 1; a <= static_cast<std::int64_t>(s.left->points.size()); ++a)
      for (std::int64_t b = 1; b <= static_cast<std::int64_t>(s.right->points.size()); ++b) out.push_back({a, b});
  } else {
    throw Error(ErrorKind::invalid_argument, "space '" + s.id + "' is not finite");
  }
  return out;
}

namespace detail {

inline std::string factor_key(const Space& s, std::int64_t k) {
  if (s.kind == SpaceKind::finite_grid) return s.points.at(static_cast<std::size_t>(k - 1));
  return std::to_string(k);
}

inline std::int64_t parse_factor_key(const Space& s, std::string_view key) {
  if (s.kind == SpaceKind::finite_grid) {
    auto it = std::find(s.points.begin(), s.points.end(), key);
    if (it == s.points.end())
      throw Error(ErrorKind::invalid_index, "unknown grid point '" + std::string(key) + "' in '" + s.id + "'");
    return static_cast<std::int64_t>(it - s.points.begin()) + 1;
  }
  std::int64_t k = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
  if (ec != std::errc() || ptr != key.data() + key.size() || k < 1)
    throw Error(ErrorKind::invalid_index, "bad coordinate '" + std::string(key) + "' in '" + s.id + "'");
  return k;
}

}  // namespace detail

/// JSON key of a coordinate: grid label, natural number, or "i,j".
inline std::string index_key(const Space& s, const Index& idx) {
  if (s.kind == SpaceKind::tensor_grid)
    return detail::factor_key(*s.left, idx.i) + "," + detail::factor_key(*s.right, idx.j);
  return detail::factor_key(s, idx.i);
}

inline Index parse_index_key(const Space& s, std::string_view key) {
  if (s.kind == SpaceKind::tensor_grid) {
    const auto comma = key.find(',');
    if (comma == std::string_view::npos)
      throw Error(ErrorKind::invalid_index, "tensor coordinate '" + std::string(key) + "' needs the form i,j");
    return {detail::parse_factor_key(*s.left, key.substr(0, comma)),
            detail::parse_factor_key(*s.right, key.substr(comma + 1))};
  }
  return {detail::parse_factor_key(s, key), 0};
}

inline void require_same_space(const Space& a, const Space& b) {
  if (!same_space(a, b))
    throw Error(ErrorKind::space_mismatch, "space mismatch: '" + a.id + "' vs '" + b.id + "'");
}

}  // namespace riesz
