#include "qmzv/rational.hpp"

#include <cctype>

#include "qmzv/errors.hpp"

namespace qmzv {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t a = 0;
  std::size_t b = text.size();
  while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  if (a == b) throw ParseError("empty rational", a);
  std::size_t i = a;
  if (text[i] == '-' || text[i] == '+') ++i;
  bool slash = false;
  bool digit_after = false;
  for (; i < b; ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit_after = true;
    } else if (c == '/' && !slash && digit_after) {
      slash = true;
      digit_after = false;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in rational", i);
    }
  }
  if (!digit_after) throw ParseError("incomplete rational", b);
  std::string s(text.substr(a, b - a));
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("invalid rational", a);
  if (r.get_den() == 0) throw ParseError("zero denominator", a);
  r.canonicalize();
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational pow(const Rational& r, unsigned e) {
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(r.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(r.get_mpq_t()), e);
  return out;
}

}  // namespace qmzv
