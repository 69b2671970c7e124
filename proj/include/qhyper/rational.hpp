#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhyper {

// Exact rational scalar. GMP keeps every arithmetic result in lowest terms
// with a positive denominator; values built from raw num/den pairs must go
// through make_rational.
using Rational = mpq_class;

// Raised when a formula hits a vanishing denominator, i.e. the caller picked
// a point that is not generic enough for the quantity requested.
class NonGenericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised on violated preconditions (convergence, index ranges, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational make_rational(long num, long den = 1);

// Accepts "p", "p/q" and decimal/scientific forms like "1e-25" or "0.125".
Rational parse_rational(std::string_view text);

// Always "num/den", also for integers ("3/1").
std::string to_string(const Rational& r);

Rational pow(const Rational& base, long exponent);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Returns t with base^t == value for |t| <= bound, if one exists.
bool is_power_of(const Rational& value, const Rational& base, long bound, long* exponent);

}  // namespace qhyper
