#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace chernlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "n" or "n/d" with optional leading sign.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  }
}

/// Exact Gaussian rational a + b*i. The coefficient field for every chain
/// group and kernel in this library.
struct QI {
  Rational re{0};
  Rational im{0};

  QI() = default;
  QI(int v) : re(v) {}  // NOLINT: implicit by design, mirrors integer literals
  explicit QI(Rational r) : re(std::move(r)) {}
  QI(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static QI unit_i() { return QI(Rational(0), Rational(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  QI& operator+=(const QI& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QI& operator-=(const QI& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QI& operator*=(const QI& o) {
    Rational nre = re * o.re - im * o.im;
    Rational nim = re * o.im + im * o.re;
    re = std::move(nre);
    im = std::move(nim);
    return *this;
  }

  friend QI operator+(QI a, const QI& b) { return a += b; }
  friend QI operator-(QI a, const QI& b) { return a -= b; }
  friend QI operator-(const QI& a) { return QI(-a.re, -a.im); }
  friend QI operator*(QI a, const QI& b) { return a *= b; }

  friend QI operator/(const QI& a, const QI& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q(i)");
    Rational n = b.re * b.re + b.im * b.im;
    return QI((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
  }

  friend bool operator==(const QI& a, const QI& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const QI& a, const QI& b) { return !(a == b); }
};

/// Canonical serialization: "a/b", "c/d*i", or "a/b+c/d*i" (denominator 1 elided).
inline std::string to_string(const QI& v) {
  if (v.im.is_zero()) return to_string(v.re);
  std::string imag = to_string(v.im < 0 ? Rational(-v.im) : v.im) + "*i";
  if (v.re.is_zero()) return (v.im < 0 ? "-" : "") + imag;
  return to_string(v.re) + (v.im < 0 ? "-" : "+") + imag;
}

/// Accepts the canonical forms above plus "i", "-i" and "3i" style literals.
inline QI parse_qi(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty Q(i) literal");

  auto parse_imag_coeff = [](std::string part) -> Rational {
    // part still carries the trailing "i" or "*i"
    if (!part.empty() && part.back() == 'i') part.pop_back();
    if (!part.empty() && part.back() == '*') part.pop_back();
    if (part.empty() || part == "+") return Rational(1);
    if (part == "-") return Rational(-1);
    return parse_rational(part);
  };

  if (s.find('i') == std::string::npos) return QI(parse_rational(s));

  // split at the first +/- past position 0; numerators and denominators
  // carry no interior signs, so that split is unambiguous
  std::size_t split = std::string::npos;
  for (std::size_t p = 1; p < s.size(); ++p) {
    if (s[p] == '+' || s[p] == '-') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return QI(Rational(0), parse_imag_coeff(s));
  if (s.back() != 'i')
    throw std::invalid_argument("malformed Q(i) literal '" + text + "'");
  return QI(parse_rational(s.substr(0, split)), parse_imag_coeff(s.substr(split)));
}

}  // namespace chernlab
