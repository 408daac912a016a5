#pragma once

#include "riesz/element.hpp"

#include <cctype>
#include <memory>
#include <variant>

namespace riesz {

/// Closed-form coefficient c(n) over the rationals, e.g. "1/n", "(-1)^n/n^2",
/// "3*n". Grammar: + - * / ^ (integer exponent), parentheses, integers, n.
class Coef {
 public:
  Coef() : Coef("1") {}
  explicit Coef(std::string text) : text_(std::move(text)) {
    Parser p{text_};
    root_ = p.parse();
  }

  Rational operator()(std::int64_t n) const { return eval(*root_, n); }
  const std::string& text() const { return text_; }

  friend bool operator==(const Coef& a, const Coef& b) { return a.text_ == b.text_; }

 private:
  struct Node {
    char op = 0;  // '#' number, 'n' variable, '~' negation, or a binary operator
    Rational value;
    std::shared_ptr<const Node> lhs, rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& why) const {
      throw Error(ErrorKind::malformed_trace,
                  "coefficient '" + std::string(src) + "': " + why + " at offset " + std::to_string(pos));
    }
    void skip() {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < src.size() && src[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    static NodePtr bin(char op, NodePtr a, NodePtr b) {
      auto n = std::make_shared<Node>();
      n->op = op;
      n->lhs = std::move(a);
      n->rhs = std::move(b);
      return n;
    }
    NodePtr parse() {
      auto e = expr();
      skip();
      if (pos != src.size()) fail("unexpected trailing input");
      return e;
    }
    NodePtr expr() {
      auto e = term();
      for (;;) {
        if (eat('+')) e = bin('+', e, term());
        else if (eat('-')) e = bin('-', e, term());
        else return e;
      }
    }
    NodePtr term() {
      auto e = unary();
      for (;;) {
        if (eat('*')) e = bin('*', e, unary());
        else if (eat('/')) e = bin('/', e, unary());
        else return e;
      }
    }
    NodePtr unary() {
      if (eat('-')) {
        auto n = std::make_shared<Node>();
        n->op = '~';
        n->lhs = unary();
        return n;
      }
      auto base = atom();
      if (eat('^')) return bin('^', base, unary());
      return base;
    }
    NodePtr atom() {
      skip();
      if (eat('(')) {
        auto e = expr();
        if (!eat(')')) fail("missing ')'");
        return e;
      }
      if (pos < src.size() && src[pos] == 'n') {
        ++pos;
        auto n = std::make_shared<Node>();
        n->op = 'n';
        return n;
      }
      const std::size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      if (start == pos) fail("expected a number, 'n' or '('");
      auto n = std::make_shared<Node>();
      n->op = '#';
      n->value = parse_rational(src.substr(start, pos - start));
      return n;
    }
  };

  static Rational eval(const Node& node, std::int64_t n) {
    switch (node.op) {
      case '#': return node.value;
      case 'n': return Rational(n);
      case '~': return -eval(*node.lhs, n);
      case '+': return eval(*node.lhs, n) + eval(*node.rhs, n);
      case '-': return eval(*node.lhs, n) - eval(*node.rhs, n);
      case '*': return eval(*node.lhs, n) * eval(*node.rhs, n);
      case '/': {
        Rational d = eval(*node.rhs, n);
        if (d == 0) throw Error(ErrorKind::malformed_trace, "coefficient divides by zero at n=" + std::to_string(n));
        return eval(*node.lhs, n) / d;
      }
      case '^': {
        const Rational base = eval(*node.lhs, n);
        const Rational ex = eval(*node.rhs, n);
        if (boost::multiprecision::denominator(ex) != 1)
          throw Error(ErrorKind::malformed_trace, "non-integer exponent in coefficient");
        long e = boost::multiprecision::numerator(ex).convert_to<long>();
        if (e < 0 && base == 0) throw Error(ErrorKind::malformed_trace, "zero to a negative power");
        Rational r = 1;
        for (long k = 0; k < (e < 0 ? -e : e); ++k) r *= base;
        return e < 0 ? Rational(1 / r) : r;
      }
    }
    return 0;
  }

  std::string text_;
  NodePtr root_;
};

/// Parametric sequence (x_n)_{n>=1} in a model lattice.
///
/// Basis families move along coordinate n unless a fixed `index` is given; on
/// a finite grid a moving index wraps around the points.
struct TraceSpec {
  enum class Family { scaled_basis, basis, diagonal_scaled, constant, explicit_list, pointwise, sum, difference };

  Family family = Family::constant;
  SpacePtr space;
  Coef coef;
  std::optional<std::int64_t> index;
  std::vector<Element> values;  // constant: one element; explicit_list: the list
  std::vector<Coef> coefs;      // pointwise: one per coordinate
  std::shared_ptr<const TraceSpec> first, second;

  static TraceSpec scaled_basis(SpacePtr s, Coef c, std::optional<std::int64_t> idx = std::nullopt) {
    TraceSpec t;
    t.family = Family::scaled_basis;
    t.space = std::move(s);
    t.coef = std::move(c);
    t.index = idx;
    return t;
  }
  static TraceSpec basis(SpacePtr s, std::optional<std::int64_t> idx = std::nullopt) {
    TraceSpec t;
    t.family = Family::basis;
    t.space = std::move(s);
    t.index = idx;
    return t;
  }
  static TraceSpec diagonal_scaled(SpacePtr s) {
    TraceSpec t;
    t.family = Family::diagonal_scaled;
    t.space = std::move(s);
    return t;
  }
  static TraceSpec constant(Element x) {
    TraceSpec t;
    t.family = Family::constant;
    t.space = x.space_ptr();
    t.values.push_back(std::move(x));
    return t;
  }
  static TraceSpec explicit_list(SpacePtr s, std::vector<Element> xs) {
    TraceSpec t;
    t.family = Family::explicit_list;
    t.space = std::move(s);
    t.values = std::move(xs);
    return t;
  }
  static TraceSpec pointwise(SpacePtr s, std::vector<Coef> cs) {
    TraceSpec t;
    t.family = Family::pointwise;
    t.space = std::move(s);
    t.coefs = std::move(cs);
    return t;
  }
  static TraceSpec sum(TraceSpec a, TraceSpec b) { return binary(Family::sum, std::move(a), std::move(b)); }
  static TraceSpec difference(TraceSpec a, TraceSpec b) {
    return binary(Family::difference, std::move(a), std::move(b));
  }

 private:
  static TraceSpec binary(Family f, TraceSpec a, TraceSpec b) {
    require_same_space(*a.space, *b.space);
    TraceSpec t;
    t.family = f;
    t.space = a.space;
    t.first = std::make_shared<const TraceSpec>(std::move(a));
    t.second = std::make_shared<const TraceSpec>(std::move(b));
    return t;
  }
};

namespace detail {

inline std::int64_t moving_index(const Space& s, std::int64_t n) {
  if (s.kind == SpaceKind::finite_grid) return (n - 1) % static_cast<std::int64_t>(s.points.size()) + 1;
  return n;
}

inline std::int64_t basis_index(const TraceSpec& t, std::int64_t n) {
  const std::int64_t k = t.index ? *t.index : moving_index(*t.space, n);
  if (!valid_factor_index(*t.space, k))
    throw Error(ErrorKind::malformed_trace, "basis index " + std::to_string(k) + " invalid for '" + t.space->id + "'");
  return k;
}

}  // namespace detail

/// n-th term of the trace (n >= 1).
inline Element trace_eval(const TraceSpec& t, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "trace index must be >= 1");
  if (!t.space) throw Error(ErrorKind::malformed_trace, "trace has no space");
  if (t.space->kind == SpaceKind::tensor_grid && t.family != TraceSpec::Family::constant &&
      t.family != TraceSpec::Family::explicit_list && t.family != TraceSpec::Family::sum &&
      t.family != TraceSpec::Family::difference)
    throw Error(ErrorKind::malformed_trace, "basis families are defined on factor spaces only");
  using F = TraceSpec::Family;
  switch (t.family) {
    case F::scaled_basis: return basis(t.space, detail::basis_index(t, n), t.coef(n));
    case F::basis: return basis(t.space, detail::basis_index(t, n));
    case F::diagonal_scaled: return basis(t.space, detail::basis_index(t, n), Rational(n));
    case F::constant:
      if (t.values.size() != 1) throw Error(ErrorKind::malformed_trace, "constant trace needs one element");
      return t.values.front();
    case F::explicit_list: {
      if (t.values.empty()) throw Error(ErrorKind::malformed_trace, "explicit trace is empty");
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(n), t.values.size());
      return t.values[k - 1];
    }
    case F::pointwise: {
      if (t.coefs.empty()) throw Error(ErrorKind::malformed_trace, "pointwise trace has no coefficients");
      if (t.space->kind == SpaceKind::finite_grid && t.coefs.size() != t.space->points.size())
        throw Error(ErrorKind::malformed_trace, "pointwise trace needs one coefficient per grid point");
      Element::Coords c;
      for (std::size_t k = 0; k < t.coefs.size(); ++k) c[{static_cast<std::int64_t>(k) + 1, 0}] = t.coefs[k](n);
      return Element(t.space, std::move(c));
    }
    case F::sum: return trace_eval(*t.first, n) + trace_eval(*t.second, n);
    case F::difference: return trace_eval(*t.first, n) - trace_eval(*t.second, n);
  }
  throw Error(ErrorKind::malformed_trace, "unknown trace family");
}

}  // namespace riesz
