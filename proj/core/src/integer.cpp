#include "commcalc/integer.hpp"

namespace commcalc {

std::string toString(const Rational& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace commcalc
