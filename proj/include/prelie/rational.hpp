#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace prelie {

// Exact rational arithmetic. GMP keeps values reduced with positive
// denominator, which is the canonical form used throughout.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "7", "-7", "3/2", "-3/2". Throws parse_error on anything else.
Rational parse_rational(std::string_view text);

// "num/den" with the denominator omitted when it is 1.
std::string format_rational(const Rational& q);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

}  // namespace prelie
