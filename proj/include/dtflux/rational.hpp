#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dtflux {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RatVector = std::vector<Rational>;

// "p/q" with q >= 1, always including the denominator.
inline std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

// Optionally signed decimal integer; leading zeros are stripped so that the
// string constructor does not read them as octal.
inline Integer parse_integer(std::string s, bool allow_sign = true) {
  bool neg = false;
  if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw std::invalid_argument("missing digits");
  for (char c : s)
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit");
  auto nz = s.find_first_not_of('0');
  Integer v(nz == std::string::npos ? std::string("0") : s.substr(nz));
  return neg ? Integer(-v) : v;
}

}  // namespace detail

// Accepts "p", "p/q", "-p/q" and plain decimals such as "0.25".
inline Rational parse_rational(std::string_view text) {
  auto b = text.find_first_not_of(" \t");
  auto e = text.find_last_not_of(" \t");
  std::string s = b == std::string_view::npos ? std::string() : std::string(text.substr(b, e - b + 1));
  try {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw std::invalid_argument("mixed literal");
      std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      bool neg = !whole.empty() && whole[0] == '-';
      if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
      if (whole.empty() && frac.empty()) throw std::invalid_argument("missing digits");
      Integer scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      Rational r(detail::parse_integer((whole.empty() ? "0" : whole) + frac, false), scale);
      return neg ? Rational(-r) : r;
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Integer n = detail::parse_integer(s.substr(0, slash)), d = detail::parse_integer(s.substr(slash + 1), false);
      if (d == 0) throw std::invalid_argument("zero denominator");
      return Rational(n, d);
    }
    return Rational(detail::parse_integer(s));
  } catch (const std::exception& ex) {
    throw std::invalid_argument("malformed rational literal '" + s + "': " + ex.what());
  }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::vector<double> to_double(const RatVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

// Exact conversion of a finite double.
inline Rational from_double(double x) { return Rational(x); }

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Scales v by a positive factor so that it becomes a primitive integer vector.
inline RatVector primitive(const RatVector& v) {
  Integer l = 1, g = 0;
  for (const auto& x : v)
    if (x != 0) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * l;
    if (out[i] != 0) g = boost::multiprecision::gcd(g, Integer(numerator(out[i])));
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace dtflux
