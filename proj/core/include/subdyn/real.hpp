#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "subdyn/bigint.hpp"

#include <string>

namespace subdyn {

// All real-valued outputs (heights, bounds) are computed in MPFR floats with
// a configurable global precision, at least 80 bits.
using Real = boost::multiprecision::mpfr_float;

// Precision management. Default 128 bits.
void set_real_precision_bits(unsigned bits);
unsigned real_precision_bits();

Real real_of(const BigInt& z);
Real real_of(const Rational& q);

// Natural logarithm of n! — exact factorial for n <= 10^4, lngamma above.
Real ln_factorial(unsigned long n);
Real ln_big(const BigInt& z); // requires z > 0

// Deterministic decimal rendering with 15 significant digits.
std::string format_real(const Real& x);

// Floor with an integer snap: values within 2^-40 of an integer are treated
// as that integer, so algebraically exact bounds floor predictably.
BigInt floor_snapped(const Real& x);

} // namespace subdyn
