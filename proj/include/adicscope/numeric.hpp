#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>

namespace adicscope {

// All combinatorial quantities (in-degrees, heights, matrix entries, suffix
// counts) are arbitrary precision: the example diagrams reach q_n = 5^12 per
// level and products overflow 64 bits by level 6.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

/// Floor-mod into [0, m). Requires m > 0.
inline BigInt mod_floor(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

inline long mod_floor_long(const BigInt& x, long m) {
  return mod_floor(x, BigInt(m)).convert_to<long>();
}

/// Checked narrowing; throws std::overflow_error when out of range.
long to_long_checked(const BigInt& x);

double to_double(const BigRat& x);

/// Exact decimal string when the reduced denominator is 2^a 5^b,
/// otherwise "num/den".
std::string rational_string(const BigRat& x);

/// Fixed 12-significant-digit formatting used by every report writer.
std::string format_double(double x);

}  // namespace adicscope
