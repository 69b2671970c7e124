#pragma once

#include <vector>

#include "qhyper/rational.hpp"

namespace qhyper {

/// Power series sum c_i x^i known exactly for 0 <= i <= order.
/// Binary operations truncate to the smaller order of the operands.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(long order, std::vector<Rational> coeffs);
  static TruncatedSeries constant(const Rational& c, long order);
  static TruncatedSeries zero(long order) { return constant(0, order); }

  long order() const { return order_; }
  const Rational& operator[](long i) const { return c_[static_cast<size_t>(i)]; }
  Rational& operator[](long i) { return c_[static_cast<size_t>(i)]; }
  Rational coefficient(long i) const;  // 0 beyond the order or below 0
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  // Index of the first nonzero coefficient, -1 if none.
  long first_nonzero() const;

  TruncatedSeries truncated(long order) const;
  // f(g x)
  TruncatedSeries scaled_argument(const Rational& g) const;
  // x^s f(x), s >= 0; order stays the same
  TruncatedSeries shifted(long s) const;
  // Drops the first s coefficients (f - low part) / x^s; order drops by s.
  TruncatedSeries unshifted(long s) const;
  // Evaluates the truncated sum at x. Useful for tests only.
  Rational evaluate(const Rational& x) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= Rational(-1); }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend TruncatedSeries operator*(const Rational& s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  // Requires a nonzero constant term in b.
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }

 private:
  long order_ = 0;
  std::vector<Rational> c_{Rational(0)};
};

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& s);

/// (z x; q)_inf to the given order via Euler's expansion
///   sum_k (-1)^k q^{k(k-1)/2} z^k x^k / (q; q)_k.
/// Every factor of the product contributes to the x^1 coefficient, so a
/// finite product of factors would not be exact; the expansion is.
TruncatedSeries x_qpoch_inf(const Rational& z, const Rational& q, long order);

/// 1 / (z x; q)_inf = sum_k z^k x^k / (q; q)_k.
TruncatedSeries x_qpoch_inf_reciprocal(const Rational& z, const Rational& q, long order);

}  // namespace qhyper
