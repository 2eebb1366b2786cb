#include "favard/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace favard {

DoubleDecomposition decompose_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("decompose_double: non-finite value");
  DoubleDecomposition d;
  if (x == 0.0) return d;
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [1/2, 1)
  d.mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
  d.exp2 = e - 53;
  while (d.mantissa != 0 && (d.mantissa & 1) == 0) {
    d.mantissa >>= 1;
    ++d.exp2;
  }
  return d;
}

BigRat exact_rational(double x) {
  const DoubleDecomposition d = decompose_double(x);
  if (d.mantissa == 0) return BigRat(0);
  if (d.exp2 >= 0) return BigRat(BigInt(d.mantissa) << d.exp2);
  return BigRat(BigInt(d.mantissa), pow2_int(-d.exp2));
}

}  // namespace favard
