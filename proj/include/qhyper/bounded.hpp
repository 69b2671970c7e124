#pragma once

#include "qhyper/rational.hpp"

namespace qhyper {

// A rational approximation with a rigorous absolute error bound: the true
// value lies in [value - error_bound, value + error_bound].
struct BoundedValue {
  Rational value = 0;
  Rational error_bound = 0;

  BoundedValue() = default;
  BoundedValue(Rational v) : value(std::move(v)) {}  // NOLINT: exact values convert implicitly
  BoundedValue(Rational v, Rational err) : value(std::move(v)), error_bound(std::move(err)) {}

  bool exact() const { return is_zero(error_bound); }
  Rational magnitude_bound() const { return abs(value) + error_bound; }
  bool contains(const Rational& x) const { return abs(x - value) <= error_bound; }
  bool overlaps(const BoundedValue& other) const {
    return abs(value - other.value) <= error_bound + other.error_bound;
  }

  // Replaces value by the nearest multiple of 2^-bits and widens the bound
  // by the rounding error. Keeps interval arithmetic on small denominators.
  BoundedValue rounded(unsigned long bits = kDefaultBits) const;

  static constexpr unsigned long kDefaultBits = 448;
};

BoundedValue operator+(const BoundedValue& x, const BoundedValue& y);
BoundedValue operator-(const BoundedValue& x, const BoundedValue& y);
BoundedValue operator-(const BoundedValue& x);
BoundedValue operator*(const BoundedValue& x, const BoundedValue& y);
// Throws NonGenericError when the divisor interval contains zero.
BoundedValue operator/(const BoundedValue& x, const BoundedValue& y);

// Result of comparing two certified values.
struct Agreement {
  bool consistent = false;  // intervals overlap
  bool tight = false;       // combined width within the requested tolerance
  Rational difference;      // |lhs - rhs| of the centres
  Rational combined_bound;  // lhs.error_bound + rhs.error_bound
  bool pass() const { return consistent && tight; }
};

Agreement compare(const BoundedValue& lhs, const BoundedValue& rhs, const Rational& tolerance);

}  // namespace qhyper
