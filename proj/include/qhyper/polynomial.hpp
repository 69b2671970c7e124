#pragma once

#include <string>
#include <vector>

#include "qhyper/rational.hpp"

namespace qhyper {

class TruncatedSeries;

/// Dense univariate polynomial in x over the rationals.
/// Coefficients are stored lowest degree first with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational constant);  // NOLINT: scalars promote
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial monomial(const Rational& coeff, long degree);
  static Polynomial x() { return monomial(1, 1); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(long i) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational evaluate(const Rational& x) const;
  // p(lambda x)
  Polynomial scaled_argument(const Rational& lambda) const;
  Polynomial shifted(long s) const;  // x^s p(x), s >= 0
  // Smallest i with a nonzero coefficient (0 for the zero polynomial).
  long valuation() const;
  TruncatedSeries to_series(long order) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  // Euclidean division; divisor must be nonzero.
  static void divmod(const Polynomial& num, const Polynomial& den, Polynomial* quot, Polynomial* rem);
  static Polynomial gcd(Polynomial a, Polynomial b);  // monic, or zero

  Polynomial monic() const;
  std::string to_string() const;  // "c0 + c1*x + ..." with num/den coefficients

 private:
  void trim();
  std::vector<Rational> c_;
};

/// (z x; q)_n as a polynomial in x, n >= 0.
Polynomial x_qpoch(const Rational& z, long n, const Rational& q);

/// num/den in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(1) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // x^s for any integer s.
  static RationalFunction x_power(long s);
  // (z x; q)_n for any integer n; negative n lands in the denominator.
  static RationalFunction x_qpoch(const Rational& z, long n, const Rational& q);

  RationalFunction scaled_argument(const Rational& lambda) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace qhyper
