#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tclt {

// All exact arithmetic runs on GMP rationals; doubles appear only in the
// Monte Carlo simulator and in display columns.
using Rational = mpq_class;
using Integer = mpz_class;

// num/den reduced to lowest terms, den > 0.
Rational make_rational(long num, long den = 1);

// Integer exponent, negative allowed for nonzero base.
Rational rational_pow(const Rational& base, long exp);

Integer binomial(unsigned long n, unsigned long k);
Integer catalan_number(unsigned long n);

// (2k-1)!! = number of pair partitions of a 2k-point set.
Integer double_factorial_odd(unsigned long k);

// n (n-1) ... (n-k+1); zero when k > n >= 0.
Integer falling_factorial(long long n, unsigned long k);

// "7", "-3/4"; always lowest terms.
std::string format_rational(const Rational& x);

// Accepts "n", "n/d" and finite decimals like "0.25" (exact). Throws
// std::invalid_argument on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& x);

} // namespace tclt
