#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tate {

/// Arbitrary-precision integer used for every entry of every matrix.
using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Floor division and the matching nonnegative remainder for b > 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline bool fits_int64(const Integer& a) {
  return a >= std::numeric_limits<std::int64_t>::min() &&
         a <= std::numeric_limits<std::int64_t>::max();
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace tate
