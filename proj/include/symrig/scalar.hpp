#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "symrig/error.hpp"

namespace symrig {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational conj(const Rational& x) { return x; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return Complex(0.0, 0.0); }
  static Complex one() { return Complex(1.0, 0.0); }
  // Only used for structural zeros; numeric rank goes through the SVD.
  static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
  static Complex conj(const Complex& x) { return std::conj(x); }
};

template <class Scalar>
Scalar from_rational(const Rational& x);

template <>
inline Rational from_rational<Rational>(const Rational& x) {
  return x;
}

template <>
inline Complex from_rational<Complex>(const Rational& x) {
  return Complex(x.get_d(), 0.0);
}

/// Parses "p", "p/q" or "-p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw InputError("malformed rational literal '" + s + "'");
  if (s.find('/') != std::string::npos && sgn(r.get_den()) == 0)
    throw InputError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace symrig
