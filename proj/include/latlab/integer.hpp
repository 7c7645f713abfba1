#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace latlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline Integer gcd(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

// Division rounding toward negative infinity; b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Representative of a mod m in [0, |m|).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline Integer numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integral(const Rational& x) { return denominator(x) == 1; }

// Representative of x in ℚ/mℤ lying in [0, m).
inline Rational rational_mod(const Rational& x, const Integer& m) {
  const Integer den = denominator(x);
  return Rational(floor_mod(numerator(x), m * den), den);
}

inline bool congruent_mod(const Rational& a, const Rational& b, const Integer& m) {
  return rational_mod(a - b, m) == 0;
}

inline Integer floor(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& x) {
  if (is_integral(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

}  // namespace latlab
