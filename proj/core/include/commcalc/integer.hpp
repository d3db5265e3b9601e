#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace commcalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense integer matrix stored row-major as a vector of rows.
using IntMatrix = std::vector<std::vector<Integer>>;

struct IntegerVectorHash {
  std::size_t operator()(const std::vector<Integer>& v) const {
    std::size_t seed = v.size();
    for (const auto& x : v) boost::hash_combine(seed, boost::multiprecision::hash_value(x));
    return seed;
  }
};

/// Generalized binomial coefficient C(k, j) for any integer k and j >= 0.
inline Integer binomial(const Integer& k, unsigned j) {
  Integer num = 1;
  Integer den = 1;
  for (unsigned t = 0; t < j; ++t) {
    num *= (k - t);
    den *= (t + 1);
  }
  return num / den;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

/// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
inline Integer extendedGcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer old_r = a, r = b;
  Integer old_s = 1, cur_s = 0;
  Integer old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer quotient = old_r / r;
    Integer tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - quotient * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

/// Floor division (rounds toward negative infinity).
inline Integer floorDiv(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline std::string toString(const Integer& x) { return x.str(); }
std::string toString(const Rational& x);

}  // namespace commcalc
