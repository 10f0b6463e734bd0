#include "freemv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace freemv {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational floor_rational(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Rational wrap_half_open(const Rational& q, const Rational& lo, const Rational& period) {
  // q - period * ceil((q - lo) / period - 1)
  Rational k = (q - lo) / period;
  Rational fl = floor_rational(k);
  Rational steps = (fl == k) ? Rational(fl - 1) : fl;
  return q - steps * period;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Rational frac(long p, long q) {
  if (q == 0) throw std::domain_error("frac: zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace freemv
