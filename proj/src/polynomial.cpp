#include "qhyper/polynomial.hpp"

#include "qhyper/series.hpp"

namespace qhyper {

Polynomial::Polynomial(Rational constant) {
  if (!qhyper::is_zero(constant)) c_.push_back(std::move(constant));
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Rational& coeff, long degree) {
  if (degree < 0) throw PreconditionError("monomial degree must be non-negative");
  std::vector<Rational> v(static_cast<size_t>(degree + 1));
  v.back() = coeff;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && qhyper::is_zero(c_.back())) c_.pop_back();
}

Rational Polynomial::coefficient(long i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<size_t>(i)];
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::scaled_argument(const Rational& lambda) const {
  Polynomial out = *this;
  Rational p = 1;
  for (auto& c : out.c_) {
    c *= p;
    p *= lambda;
  }
  out.trim();
  return out;
}

Polynomial Polynomial::shifted(long s) const {
  if (s < 0) throw PreconditionError("shift must be non-negative");
  if (is_zero()) return {};
  std::vector<Rational> v(static_cast<size_t>(s));
  v.insert(v.end(), c_.begin(), c_.end());
  return Polynomial(std::move(v));
}

long Polynomial::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!qhyper::is_zero(c_[i])) return static_cast<long>(i);
  }
  return 0;
}

TruncatedSeries Polynomial::to_series(long order) const {
  std::vector<Rational> v(static_cast<size_t>(order + 1));
  for (long i = 0; i <= order && i <= degree(); ++i) v[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
  return {order, std::move(v)};
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (qhyper::is_zero(c_[i])) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(v);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (qhyper::is_zero(s)) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

void Polynomial::divmod(const Polynomial& num, const Polynomial& den, Polynomial* quot, Polynomial* rem) {
  if (den.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rational> r = num.c_;
  const long dd = den.degree();
  const long qd = num.degree() - dd;
  std::vector<Rational> qv(qd >= 0 ? static_cast<size_t>(qd + 1) : 0);
  const Rational inv = 1 / den.leading();
  for (long i = qd; i >= 0; --i) {
    const Rational f = r[static_cast<size_t>(i + dd)] * inv;
    qv[static_cast<size_t>(i)] = f;
    if (qhyper::is_zero(f)) continue;
    for (long j = 0; j <= dd; ++j) r[static_cast<size_t>(i + j)] -= f * den.c_[static_cast<size_t>(j)];
  }
  if (quot) *quot = Polynomial(std::move(qv));
  if (rem) {
    if (static_cast<long>(r.size()) > dd) r.resize(static_cast<size_t>(std::max<long>(dd, 0)));
    *rem = Polynomial(std::move(r));
  }
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r;
    divmod(a, b, nullptr, &r);
    a = std::move(b);
    b = r.monic();  // keeps coefficient growth in check
  }
  return a.monic();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / leading());
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (qhyper::is_zero(c_[i])) continue;
    if (!out.empty()) out += " + ";
    out += "(" + qhyper::to_string(c_[i]) + ")";
    if (i == 1) out += "*x";
    if (i > 1) out += "*x^" + std::to_string(i);
  }
  return out;
}

Polynomial x_qpoch(const Rational& z, long n, const Rational& q) {
  if (n < 0) throw PreconditionError("x_qpoch needs n >= 0");
  Polynomial out(1);
  Rational zq = z;
  for (long j = 0; j < n; ++j) {
    out *= Polynomial(std::vector<Rational>{1, -zq});
    zq *= q;
  }
  return out;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw NonGenericError("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = Polynomial::gcd(num_, den_);
  if (g.degree() > 0) {
    Polynomial::divmod(num_, g, &num_, nullptr);
    Polynomial::divmod(den_, g, &den_, nullptr);
  }
  const Rational lead = den_.leading();
  num_ *= Rational(1 / lead);
  den_ *= Rational(1 / lead);
}

RationalFunction RationalFunction::x_power(long s) {
  if (s >= 0) return {Polynomial::monomial(1, s), Polynomial(1)};
  return {Polynomial(1), Polynomial::monomial(1, -s)};
}

RationalFunction RationalFunction::x_qpoch(const Rational& z, long n, const Rational& q) {
  if (n >= 0) return {qhyper::x_qpoch(z, n, q), Polynomial(1)};
  return {Polynomial(1), qhyper::x_qpoch(z * pow(q, n), -n, q)};
}

RationalFunction RationalFunction::scaled_argument(const Rational& lambda) const {
  return {num_.scaled_argument(lambda), den_.scaled_argument(lambda)};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw NonGenericError("division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunction::to_string() const {
  if (den_ == Polynomial(1)) return num_.to_string();
  return "[" + num_.to_string() + "] / [" + den_.to_string() + "]";
}

}  // namespace qhyper
