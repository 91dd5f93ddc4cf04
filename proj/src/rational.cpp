#include "ua/rational.hpp"

#include <cctype>

#include "ua/errors.hpp"

namespace ua {

Rational frac(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  const auto den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num_text, true) || !is_integer_literal(den_text, false)) {
    throw InputError("not a rational literal: \"" + std::string(text) + "\"");
  }
  std::string num(num_text);
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(std::string(den_text), 10);
  if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace ua
