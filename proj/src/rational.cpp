#include "prelie/rational.hpp"

#include <cctype>

#include "prelie/errors.hpp"

namespace prelie {

Rational parse_rational(std::string_view text) {
  auto fail = [&](std::size_t pos) {
    throw parse_error("malformed rational '" + std::string(text) + "'", pos);
  };
  if (text.empty()) fail(0);
  std::size_t i = 0;
  auto scan_integer = [&]() {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) fail(i);
    return std::string(text.substr(start, i - start));
  };
  std::string num = scan_integer();
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = scan_integer();
  }
  if (i != text.size()) fail(i);
  Integer n(num), d(den);
  if (d == 0) throw parse_error("zero denominator in '" + std::string(text) + "'", 0);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) {
    s += '/';
    s += q.get_den().get_str();
  }
  return s;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace prelie
