#include "roughren/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace roughren {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t first = s.find_first_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
  s = s.substr(first);

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw std::invalid_argument("rational literal mixes '.' and '/': " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad decimal literal: " + s);
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad decimal literal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace roughren
