#include "adicscope/numeric.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>

namespace adicscope {

long to_long_checked(const BigInt& x) {
  if (x < std::numeric_limits<long>::min() ||
      x > std::numeric_limits<long>::max())
    throw std::overflow_error("value " + x.str() + " does not fit in long");
  return x.convert_to<long>();
}

double to_double(const BigRat& x) { return x.convert_to<double>(); }

std::string rational_string(const BigRat& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  // Terminating decimal iff den = 2^a 5^b after reduction.
  int twos = 0, fives = 0;
  BigInt d = den;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  const int digits = twos > fives ? twos : fives;
  BigInt scaled = num;
  for (int i = 0; i < digits - twos; ++i) scaled *= 2;
  for (int i = 0; i < digits - fives; ++i) scaled *= 5;
  const bool neg = scaled < 0;
  std::string s = (neg ? -scaled : scaled).str();
  if (static_cast<int>(s.size()) <= digits)
    s.insert(0, static_cast<std::size_t>(digits + 1 - s.size()), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (neg ? "-" : "") + s;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace adicscope
