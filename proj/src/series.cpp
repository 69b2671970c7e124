#include "qhyper/series.hpp"

#include <algorithm>

#include "qhyper/qpoch.hpp"

namespace qhyper {

TruncatedSeries::TruncatedSeries(long order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
  if (order < 0) throw PreconditionError("series order must be non-negative");
  c_.resize(static_cast<size_t>(order + 1));
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, long order) {
  std::vector<Rational> v(static_cast<size_t>(order + 1));
  v[0] = c;
  return {order, std::move(v)};
}

Rational TruncatedSeries::coefficient(long i) const {
  if (i < 0 || i > order_) return 0;
  return c_[static_cast<size_t>(i)];
}

bool TruncatedSeries::is_zero() const { return first_nonzero() < 0; }

long TruncatedSeries::first_nonzero() const {
  for (long i = 0; i <= order_; ++i) {
    if (!qhyper::is_zero(c_[static_cast<size_t>(i)])) return i;
  }
  return -1;
}

TruncatedSeries TruncatedSeries::truncated(long order) const {
  order = std::min(order, order_);
  return {order, std::vector<Rational>(c_.begin(), c_.begin() + order + 1)};
}

TruncatedSeries TruncatedSeries::scaled_argument(const Rational& g) const {
  TruncatedSeries out = *this;
  Rational p = 1;
  for (auto& c : out.c_) {
    c *= p;
    p *= g;
  }
  return out;
}

TruncatedSeries TruncatedSeries::shifted(long s) const {
  if (s < 0) throw PreconditionError("shift must be non-negative");
  std::vector<Rational> v(static_cast<size_t>(order_ + 1));
  for (long i = 0; i + s <= order_; ++i) v[static_cast<size_t>(i + s)] = c_[static_cast<size_t>(i)];
  return {order_, std::move(v)};
}

TruncatedSeries TruncatedSeries::unshifted(long s) const {
  if (s < 0 || s > order_) throw PreconditionError("unshift out of range");
  return {order_ - s, std::vector<Rational>(c_.begin() + s, c_.end())};
}

Rational TruncatedSeries::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (long i = order_; i >= 0; --i) acc = acc * x + c_[static_cast<size_t>(i)];
  return acc;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (long i = 0; i <= order_; ++i) c_[static_cast<size_t>(i)] += o.c_[static_cast<size_t>(i)];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (long i = 0; i <= order_; ++i) c_[static_cast<size_t>(i)] -= o.c_[static_cast<size_t>(i)];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const long n = std::min(a.order_, b.order_);
  std::vector<Rational> v(static_cast<size_t>(n + 1));
  for (long i = 0; i <= n; ++i) {
    if (is_zero(a.c_[static_cast<size_t>(i)])) continue;
    for (long j = 0; i + j <= n; ++j) v[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
  }
  return {n, std::move(v)};
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (is_zero(b.c_[0])) throw PreconditionError("series division needs a unit constant term");
  const long n = std::min(a.order_, b.order_);
  const Rational inv = 1 / b.c_[0];
  std::vector<Rational> v(static_cast<size_t>(n + 1));
  for (long i = 0; i <= n; ++i) {
    Rational acc = a.c_[static_cast<size_t>(i)];
    for (long j = 1; j <= i; ++j) acc -= b.c_[static_cast<size_t>(j)] * v[static_cast<size_t>(i - j)];
    v[static_cast<size_t>(i)] = acc * inv;
  }
  return {n, std::move(v)};
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }
TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b) { return a / b; }
TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& s) { return a * s; }

TruncatedSeries x_qpoch_inf(const Rational& z, const Rational& q, long order) {
  std::vector<Rational> v(static_cast<size_t>(order + 1));
  Rational term = 1;  // (-1)^k q^{k(k-1)/2} z^k / (q)_k
  for (long k = 0; k <= order; ++k) {
    v[static_cast<size_t>(k)] = term;
    term *= -z * pow(q, k) / (1 - pow(q, k + 1));
  }
  return {order, std::move(v)};
}

TruncatedSeries x_qpoch_inf_reciprocal(const Rational& z, const Rational& q, long order) {
  std::vector<Rational> v(static_cast<size_t>(order + 1));
  Rational term = 1;
  for (long k = 0; k <= order; ++k) {
    v[static_cast<size_t>(k)] = term;
    term *= z / (1 - pow(q, k + 1));
  }
  return {order, std::move(v)};
}

}  // namespace qhyper
