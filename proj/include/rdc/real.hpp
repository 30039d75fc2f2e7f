#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace rdc {

/// Arbitrary-precision real. Values are always created with an explicit
/// binary precision; expression results inherit the widest operand.
using Real = boost::multiprecision::mpfr_float;

Real make_real(const mpq_class& value, unsigned bits);
Real make_real(const mpz_class& value, unsigned bits);
inline Real make_real(long value, unsigned bits) { return make_real(mpz_class(value), bits); }

unsigned precision_bits(const Real& x);

/// Exact dyadic rational equal to x (x must be finite).
mpq_class exact_rational(const Real& x);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Real& x, int digits);

/// Number of decimal digits that a binary precision supports.
int decimal_digits(unsigned bits);

}  // namespace rdc
