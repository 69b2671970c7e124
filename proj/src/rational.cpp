#include "qhyper/rational.hpp"

#include <cctype>

namespace qhyper {

Rational make_rational(long num, long den) {
  if (den == 0) throw NonGenericError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  mpz_class digits = 0;
  long scale = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (after_point) --scale;
      seen_digit = true;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw PreconditionError("malformed number: " + std::string(text));
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') {
      throw PreconditionError("malformed number: " + std::string(text));
    }
    const std::string exponent(text.substr(pos + 1));
    if (exponent.empty()) throw PreconditionError("malformed exponent: " + std::string(text));
    std::size_t used = 0;
    const long e = std::stol(exponent, &used);
    if (used != exponent.size()) throw PreconditionError("malformed exponent: " + std::string(text));
    scale += e;
  }
  Rational r(digits);
  r *= pow(Rational(10), scale);
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw PreconditionError("empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  mpz_class num;
  mpz_class den;
  if (num.set_str(std::string(text.substr(0, slash)), 10) != 0 ||
      den.set_str(std::string(text.substr(slash + 1)), 10) != 0) {
    throw PreconditionError("malformed rational: " + std::string(text));
  }
  if (den == 0) throw PreconditionError("zero denominator: " + std::string(text));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (is_zero(base)) throw NonGenericError("zero raised to a negative power");
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return result;
}

bool is_power_of(const Rational& value, const Rational& base, long bound, long* exponent) {
  if (value == 1) {
    if (exponent) *exponent = 0;
    return true;
  }
  Rational up = 1;
  Rational down = 1;
  const bool invertible = !is_zero(base);
  for (long t = 1; t <= bound; ++t) {
    up *= base;
    if (up == value) {
      if (exponent) *exponent = t;
      return true;
    }
    if (invertible) {
      down /= base;
      if (down == value) {
        if (exponent) *exponent = -t;
        return true;
      }
    }
  }
  return false;
}

}  // namespace qhyper
