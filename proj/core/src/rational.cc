#include "robsel/rational.h"

#include <cctype>

#include "robsel/error.h"

namespace robsel {

Rational rat(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  const std::string input(text);
  std::size_t pos = 0;
  const auto digits = [&](std::size_t start) {
    std::size_t i = start;
    while (i < input.size() && std::isdigit(static_cast<unsigned char>(input[i]))) ++i;
    return i;
  };

  if (pos < input.size() && input[pos] == '-') ++pos;
  std::size_t end_num = digits(pos);
  if (end_num == pos) throw ParseError("malformed rational literal: '" + input + "'");
  pos = end_num;

  if (pos < input.size() && input[pos] == '/') {
    ++pos;
    std::size_t end_den = digits(pos);
    if (end_den == pos || end_den != input.size())
      throw ParseError("malformed rational literal: '" + input + "'");
    if (mpz_class(input.substr(pos)) == 0)
      throw ParseError("rational with zero denominator: '" + input + "'");
  } else if (pos != input.size()) {
    throw ParseError("malformed rational literal: '" + input + "'");
  }

  Rational r;
  if (mpq_set_str(r.get_mpq_t(), input.c_str(), 10) != 0)
    throw ParseError("malformed rational literal: '" + input + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal_string(const Rational& value, int digits) {
  if (digits < 0) throw Error("negative digit count");
  const bool negative = value < 0;
  mpz_class num = abs(value.get_num());
  const mpz_class& den = value.get_den();

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = num * scale;
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) ++q;  // half-up on the absolute value

  std::string body = q.get_str();
  std::string out;
  if (digits == 0) {
    out = body;
  } else {
    if (static_cast<int>(body.size()) <= digits)
      body.insert(0, static_cast<std::size_t>(digits) - body.size() + 1, '0');
    out = body.substr(0, body.size() - static_cast<std::size_t>(digits)) + "." +
          body.substr(body.size() - static_cast<std::size_t>(digits));
  }
  if (negative && q != 0) out.insert(0, 1, '-');
  return out;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational floor(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return Rational(q);
}

long to_long(const Rational& value) {
  if (!is_integer(value)) throw Error("rational is not an integer: " + to_string(value));
  if (!value.get_num().fits_slong_p()) throw Error("integer out of range: " + to_string(value));
  return value.get_num().get_si();
}

}  // namespace robsel
