#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

namespace ppcalc {

/// Arbitrary-precision integer used for every ring element and lattice entry.
using Int = boost::multiprecision::cpp_int;

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

struct ExtGcd {
  Int g;  // >= 0
  Int s;
  Int t;  // g == s*a + t*b
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline std::string to_string(const Int& v) { return v.str(); }

inline long long to_ll(const Int& v) { return static_cast<long long>(v); }

}  // namespace ppcalc
