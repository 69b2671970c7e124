#include "qhyper/bounded.hpp"

namespace qhyper {

namespace {

// Nearest grid point at or below (ceil = false) or at or above r.
Rational to_grid(const Rational& r, unsigned long bits, bool ceil) {
  mpz_class scaled = r.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
  mpz_class quotient;
  if (ceil) {
    mpz_cdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), r.get_den_mpz_t());
  } else {
    mpz_fdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), r.get_den_mpz_t());
  }
  Rational out(quotient);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

bool on_grid(const Rational& r, unsigned long bits) {
  const mpz_srcptr den = r.get_den_mpz_t();
  const size_t top = mpz_sizeinbase(den, 2) - 1;
  return top <= bits && mpz_scan1(den, 0) == top;  // den = 2^top
}

}  // namespace

BoundedValue BoundedValue::rounded(unsigned long bits) const {
  BoundedValue out = *this;
  if (!on_grid(value, bits)) {
    out.value = to_grid(value, bits, false);
    out.error_bound += value - out.value;  // non-negative by construction
  }
  if (!on_grid(out.error_bound, bits)) out.error_bound = to_grid(out.error_bound, bits, true);
  return out;
}

BoundedValue operator+(const BoundedValue& x, const BoundedValue& y) {
  return {x.value + y.value, x.error_bound + y.error_bound};
}

BoundedValue operator-(const BoundedValue& x, const BoundedValue& y) {
  return {x.value - y.value, x.error_bound + y.error_bound};
}

BoundedValue operator-(const BoundedValue& x) { return {-x.value, x.error_bound}; }

BoundedValue operator*(const BoundedValue& x, const BoundedValue& y) {
  Rational err = abs(x.value) * y.error_bound + abs(y.value) * x.error_bound + x.error_bound * y.error_bound;
  return {x.value * y.value, err};
}

BoundedValue operator/(const BoundedValue& x, const BoundedValue& y) {
  const Rational ay = abs(y.value);
  if (ay <= y.error_bound) throw NonGenericError("division by an interval containing zero");
  if (y.exact()) return {x.value / y.value, x.error_bound / ay};
  // |x/y - x0/y0| <= (|x0| ey + |y0| ex) / (|y0| (|y0| - ey))
  Rational err = (abs(x.value) * y.error_bound + ay * x.error_bound) / (ay * (ay - y.error_bound));
  return {x.value / y.value, err};
}

Agreement compare(const BoundedValue& lhs, const BoundedValue& rhs, const Rational& tolerance) {
  Agreement out;
  out.difference = abs(lhs.value - rhs.value);
  out.combined_bound = lhs.error_bound + rhs.error_bound;
  out.consistent = out.difference <= out.combined_bound;
  out.tight = out.combined_bound <= tolerance;
  return out;
}

}  // namespace qhyper
