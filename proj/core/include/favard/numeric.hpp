#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace favard {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

/// Renders p/q in lowest terms; integers come out without the "/1".
inline std::string fraction_string(const BigRat& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline BigInt pow2_int(std::int64_t e) {
  BigInt r = 1;
  return r << e;  // e >= 0
}

/// Exact rational value of a finite double (doubles are dyadic rationals).
BigRat exact_rational(double x);

/// Integer mantissa/exponent decomposition: x = mantissa * 2^exp2 exactly.
struct DoubleDecomposition {
  std::int64_t mantissa = 0;
  int exp2 = 0;
};
DoubleDecomposition decompose_double(double x);

}  // namespace favard
