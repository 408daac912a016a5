#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace riesz {

/// Exact rational scalar used by every model lattice.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

enum class ErrorKind {
  space_mismatch,
  invalid_index,
  invalid_element,
  invalid_unit,
  invalid_functional,
  negative_input,
  domination_failure,
  zero_divisor,
  unrepresentable,
  malformed_trace,
  invalid_argument,
  search_overflow,
  schema,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Rational rat(long num, long den = 1) { return Rational(num) / Rational(den); }

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline const Rational& rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// "p/q" or "p" for integers.
inline std::string to_string(const Rational& x) { return x.str(); }

/// Accepts "p", "-p", "p/q"; rejects anything else (including decimals and q = 0).
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorKind::schema, "malformed rational '" + std::string(text) + "'");
  };
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (!s.empty() && allow_sign && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!valid_int(num, true)) throw fail();
  if (slash == std::string_view::npos) return Rational(Integer{std::string(num)});
  std::string_view den = text.substr(slash + 1);
  if (!valid_int(den, false)) throw fail();
  Integer d{std::string(den)};
  if (d == 0) throw fail();
  return Rational(Integer{std::string(num)}) / Rational(d);
}

/// Exact square root when x is the square of a rational, otherwise nullopt.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  const Integer p = boost::multiprecision::numerator(x);
  const Integer q = boost::multiprecision::denominator(x);
  const Integer rp = boost::multiprecision::sqrt(p);
  const Integer rq = boost::multiprecision::sqrt(q);
  if (rp * rp != p || rq * rq != q) return std::nullopt;
  return Rational(rp) / Rational(rq);
}

/// 2^(-k) for k >= 0.
inline Rational pow2_neg(long k) {
  Integer d = 1;
  d <<= static_cast<unsigned>(k);
  return Rational(1) / Rational(d);
}

}  // namespace riesz
