#include "qhyper/threeterm.hpp"

#include <algorithm>
#include <sstream>

#include "qhyper/hypergeometric.hpp"

namespace qhyper {

std::string ShiftQuad::to_string() const {
  return std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n);
}

ShiftQuad parse_quad(const std::string& text) {
  std::vector<long> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw PreconditionError("quad entries must be integers: " + text);
    }
  }
  if (v.size() != 4) throw PreconditionError("quad must have four entries: " + text);
  return {v[0], v[1], v[2], v[3]};
}

Canonical canonicalize(const ShiftQuad& quad, const GenericPoint& point) {
  if (quad.k <= quad.l) return {quad, point, false};
  return {{quad.l, quad.k, quad.m, quad.n}, point.swapped_ab(), true};
}

long degree_bound(const ShiftQuad& s) {
  return std::max(s.k + s.l - s.m + s.n, 0L) + std::max(s.m, 0L) - std::min(s.n, 0L) - s.k - 1;
}

const Rational CoefficientFamilies::kZero = 0;

CoefficientFamilies::CoefficientFamilies(const ShiftQuad& quad, const GenericPoint& point) : quad_(quad), p_(point) {
  if (quad.k > quad.l) throw PreconditionError("coefficient families need k <= l");
  const auto [k, l, m, n] = std::tuple{quad.k, quad.l, quad.m, quad.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  mu1_ = qpow(k * (m - k - l - n + 1)) * pow(a, m - k - l - n) * pow(c / (a * b), k) * qp(a, k) * qp(a * q / c, k - m) *
         rqp(a * q / b, k - l);
  mu2_ = qpow(l * (m - k - l - n + 1)) * pow(b, m - k - l - n) * pow(c / (a * b), l) * qp(b, l) * qp(b * q / c, l - m) *
         rqp(b * q / a, l - k);
  const long M = std::max(k + l - m + n, 0L);
  const long N = std::min(n, 0L);
  const long sign = k + l - m + M - N - 1;
  const long twice = k * (k - 1) + l * (l - 1) - m * (m - 1) + M * (M - 1) - N * (N - 1);
  mu_ = ((sign % 2 == 0) ? 1 : -1) * qpow(twice / 2) * (q - c) * pow(a, k) * pow(b, l) / ((b - a) * pow(c, m)) *
        pow(a * b / c, M) * qp(c, m) * rqp(a, k) * rqp(b, l);
}

const Rational& CoefficientFamilies::memo(Cache& cache, long j, Rational (CoefficientFamilies::*fn)(long) const) {
  if (j < 0) return kZero;
  auto it = cache.find(j);
  if (it != cache.end()) return it->second;
  return cache.emplace(j, (this->*fn)(j)).first->second;
}

const Rational& CoefficientFamilies::A(long j) { return memo(a_, j, &CoefficientFamilies::eval_A); }
const Rational& CoefficientFamilies::B(long j) { return memo(b_, j, &CoefficientFamilies::eval_B); }
const Rational& CoefficientFamilies::Atilde(long j) { return memo(at_, j, &CoefficientFamilies::eval_At); }
const Rational& CoefficientFamilies::Btilde(long j) { return memo(bt_, j, &CoefficientFamilies::eval_Bt); }
const Rational& CoefficientFamilies::C(long j) { return memo(c_, j, &CoefficientFamilies::eval_C); }
const Rational& CoefficientFamilies::D(long j) { return memo(d_, j, &CoefficientFamilies::eval_D); }
const Rational& CoefficientFamilies::Ctilde(long j) { return memo(ct_, j, &CoefficientFamilies::eval_Ct); }
const Rational& CoefficientFamilies::Dtilde(long j) { return memo(dt_, j, &CoefficientFamilies::eval_Dt); }

// The families below transcribe the closed forms. Reciprocal factors go
// through rqp so that 1/(q)_j and 1/(q^{-j})_j follow the reciprocal
// conventions and no special cases are needed.

Rational CoefficientFamilies::eval_A(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = -qp(a * q / c, k - m) * qp(b * q / c, l - m) * qp(c, m - j - 1) * rqp(q * q / c, -m - 1) *
                       rqp(qpow(-j), j) * rqp(a, k - j) * rqp(b, l - j) * pow(c * qpow(m - j - 1), 1 - n);
  if (is_zero(pre)) return 0;
  return pre * phi4_3_terminating(j, {c * qpow(m - j - 1), a, b}, {c, a * qpow(k - j), b * qpow(l - j)}, qpow(1 - n), q);
}

Rational CoefficientFamilies::eval_B(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = qp(a * q / c, j) * qp(b * q / c, j) * rqp(q, j) * rqp(q * q / c, j);
  return pre * phi4_3_terminating(j, {c * qpow(-j - 1), c * qpow(m - k) / a, c * qpow(m - l) / b},
                                  {c * qpow(m), c * qpow(-j) / a, c * qpow(-j) / b}, qpow(k + l - m + n + 1), q);
}

Rational CoefficientFamilies::eval_At(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = qp(c, m) * qp(a * q / c, j + k - m) * qp(b * q / c, j + l - m) * rqp(a, k) * rqp(b, l) *
                       rqp(q, j) * rqp(q * q / c, j - m) * pow(c * qpow(m - j - 1), -n);
  if (is_zero(pre)) return 0;
  return pre * phi4_3_terminating(j, {c * qpow(m - j - 1), c / a, c / b},
                                  {c, c * qpow(m - k - j) / a, c * qpow(m - l - j) / b}, qpow(m - k - l - n + 1), q);
}

Rational CoefficientFamilies::eval_Bt(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = qp(a * qpow(-j), j) * qp(b * qpow(-j), j) * rqp(qpow(-j), j) * rqp(c * qpow(-j - 1), j) * qpow(-j);
  return pre * phi4_3_terminating(j, {c * qpow(-j - 1), a * qpow(k), b * qpow(l)},
                                  {c * qpow(m), a * qpow(-j), b * qpow(-j)}, qpow(1 + n), q);
}

Rational CoefficientFamilies::eval_C(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = mu1_ * qp(b, j) * qp(b * q / c, j) * rqp(q, j) * rqp(b * q / a, j) * pow(c * q / (a * b), j);
  return pre * phi4_3_terminating(j, {a * qpow(-j) / b, qpow(1 - l) / b, c * qpow(m - l) / b},
                                  {a * qpow(k - l + 1) / b, qpow(1 - j) / b, c * qpow(-j) / b}, qpow(1 - n), q);
}

Rational CoefficientFamilies::eval_D(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = mu2_ * qp(qpow(1 - k) / a, j) * qp(c * qpow(m - k) / a, j) * rqp(q, j) *
                       rqp(b * qpow(l - k + 1) / a, j) * qpow((1 - n) * j);
  return pre * phi4_3_terminating(j, {a * qpow(k - l - j) / b, a, a * q / c},
                                  {a * q / b, a * qpow(k - j), a * qpow(k - m - j + 1) / c}, qpow(k + l - m + n + 1), q);
}

Rational CoefficientFamilies::eval_Ct(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = mu1_ * qp(a * qpow(k), j) * qp(a * qpow(k - m + 1) / c, j) * rqp(q, j) *
                       rqp(a * qpow(k - l + 1) / b, j) * pow(c * qpow(m - k - l - n + 1) / (a * b), j);
  return pre * phi4_3_terminating(j, {b * qpow(l - k - j) / a, q / a, c / a},
                                  {b * q / a, qpow(1 - k - j) / a, c * qpow(m - k - j) / a}, qpow(1 + n), q);
}

Rational CoefficientFamilies::eval_Dt(long j) const {
  const auto [k, l, m, n] = std::tuple{quad_.k, quad_.l, quad_.m, quad_.n};
  const Rational &q = p_.q, &a = p_.a, &b = p_.b, &c = p_.c;
  const Rational pre = mu2_ * qp(q / b, j) * qp(c / b, j) * rqp(q, j) * rqp(a * q / b, j) * qpow(j);
  return pre * phi4_3_terminating(j, {b * qpow(-j) / a, b * qpow(l), b * qpow(l - m + 1) / c},
                                  {b * qpow(l - k + 1) / a, b * qpow(-j), b * qpow(1 - j) / c},
                                  qpow(m - k - l - n + 1), q);
}

namespace {

CoefficientFamilies families_for(const ShiftQuad& quad, const GenericPoint& point) {
  return CoefficientFamilies(quad, point);
}

}  // namespace

Rational coeff_A(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).A(j); }
Rational coeff_B(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).B(j); }
Rational coeff_Atilde(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).Atilde(j); }
Rational coeff_Btilde(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).Btilde(j); }
Rational coeff_C(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).C(j); }
Rational coeff_D(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).D(j); }
Rational coeff_Ctilde(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).Ctilde(j); }
Rational coeff_Dtilde(long j, const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).Dtilde(j); }
Rational coeff_mu(const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).mu(); }
Rational coeff_mu1(const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).mu1(); }
Rational coeff_mu2(const ShiftQuad& s, const GenericPoint& p) { return families_for(s, p).mu2(); }

Polynomial compute_P_theorem(CoefficientFamilies& fam) {
  const ShiftQuad& s = fam.quad();
  const Rational& q = fam.point().q;
  const long d = degree_bound(s);
  if (d < 0) return {};
  const long S = s.k + s.l - s.m + s.n;
  const long mplus = std::max(s.m, 0L);
  std::vector<Rational> coeffs(static_cast<size_t>(d + 1));
  if (S >= 0) {
    const long top = std::max(s.n, 0L);
    for (long j = 0; j <= d; ++j) {
      Rational acc = 0;
      for (long i = 0; i <= top; ++i) {
        const Rational w = qpoch(pow(q, -s.n), i, q) * rqpoch(q, i, q) * pow(q, s.n * i);
        acc += w * (fam.A(j - i + s.m - mplus) - fam.B(j - i - mplus));
      }
      coeffs[static_cast<size_t>(j)] = acc;
    }
  } else {
    const long top = -std::min(s.n, 0L);
    for (long j = 0; j <= d; ++j) {
      Rational acc = 0;
      for (long i = 0; i <= top; ++i) {
        const Rational w = qpoch(pow(q, s.n), i, q) * rqpoch(q, i, q);
        acc += w * (fam.Atilde(j - i + s.m - mplus) - fam.Btilde(j - i - mplus));
      }
      coeffs[static_cast<size_t>(j)] = acc;
    }
  }
  return Polynomial(std::move(coeffs));
}

Polynomial compute_P_theorem(const ShiftQuad& quad, const GenericPoint& point) {
  CoefficientFamilies fam(quad, point);
  return compute_P_theorem(fam);
}

Polynomial compute_P_proposition(CoefficientFamilies& fam) {
  const ShiftQuad& s = fam.quad();
  const Rational& q = fam.point().q;
  const long d = degree_bound(s);
  if (d < 0) return {};
  const long S = s.k + s.l - s.m + s.n;
  std::vector<Rational> coeffs(static_cast<size_t>(d + 1));
  for (long j = 0; j <= d; ++j) {
    Rational acc = 0;
    if (S >= 0) {
      for (long i = 0; i <= std::max(s.n, 0L); ++i) {
        const Rational w = qpoch(pow(q, -s.n), i, q) * rqpoch(q, i, q) * pow(q, i);
        acc += w * (fam.C(j - i) - fam.D(j - i + s.k - s.l));
      }
    } else {
      for (long i = 0; i <= -std::min(s.n, 0L); ++i) {
        const Rational w = qpoch(pow(q, s.n), i, q) * rqpoch(q, i, q) * pow(q, (1 - s.n) * i);
        acc += w * (fam.Ctilde(j - i) - fam.Dtilde(j - i + s.k - s.l));
      }
    }
    coeffs[static_cast<size_t>(d - j)] = fam.mu() * acc;
  }
  return Polynomial(std::move(coeffs));
}

Polynomial compute_P_proposition(const ShiftQuad& quad, const GenericPoint& point) {
  CoefficientFamilies fam(quad, point);
  return compute_P_proposition(fam);
}

namespace {

// Q and R for k <= l.
RationalFunction canonical_Q(const ShiftQuad& s, const GenericPoint& p) {
  const Rational &q = p.q, &a = p.a, &b = p.b, &c = p.c;
  const Polynomial P = compute_P_theorem(s, p);
  if (P.is_zero()) return {};
  const long M = std::max(s.k + s.l - s.m + s.n, 0L);
  const Rational cst = -(1 - a) * (1 - b) * c / ((q - c) * (1 - c));
  return RationalFunction(P * cst) * RationalFunction::x_power(1 - std::max(s.m, 0L)) *
         RationalFunction::x_qpoch(1, std::min(s.n, 0L), q) / RationalFunction::x_qpoch(a * b * q / c, M - 1, q);
}

RationalFunction canonical_R(const ShiftQuad& s, const GenericPoint& p) {
  const Rational& q = p.q;
  const GenericPoint up = p.shifted(1, 1, 1);
  if (!check_generic(up)) throw NonGenericError("the point (aq, bq, cq) is not generic");
  const Polynomial P = compute_P_theorem(s.shifted_down(), up);
  if (P.is_zero()) return {};
  const long S = s.k + s.l - s.m + s.n;
  return RationalFunction(-P) * RationalFunction::x_power(-std::max(s.m - 1, 0L)) *
         RationalFunction::x_qpoch(1, std::min(s.n, 0L), q) /
         RationalFunction::x_qpoch(p.a * p.b * q / p.c, std::max(S - 1, 0L), q);
}

void require_generic(const GenericPoint& p) {
  auto g = inspect_generic(p);
  if (!g.generic) throw NonGenericError("point is not generic: " + g.violations.front());
}

}  // namespace

RationalFunction compute_Q(const ShiftQuad& quad, const GenericPoint& point) {
  require_generic(point);
  Canonical cn = canonicalize(quad, point);
  return canonical_Q(cn.quad, cn.point);
}

RationalFunction compute_R(const ShiftQuad& quad, const GenericPoint& point) {
  require_generic(point);
  Canonical cn = canonicalize(quad, point);
  return canonical_R(cn.quad, cn.point);
}

QRPair compute_QR(const ShiftQuad& quad, const GenericPoint& point) {
  require_generic(point);
  Canonical cn = canonicalize(quad, point);
  return {canonical_Q(cn.quad, cn.point), canonical_R(cn.quad, cn.point), cn.swapped};
}

namespace {

TruncatedSeries times(const Polynomial& p, const TruncatedSeries& s) { return p.to_series(s.order()) * s; }

TruncatedSeries shifted_series(const ShiftQuad& s, const GenericPoint& p, long order) {
  return phi_series_in_x({{p.a * pow(p.q, s.k), p.b * pow(p.q, s.l)}, {p.c * pow(p.q, s.m)}, pow(p.q, s.n), p.q}, order);
}

// lhs == Q * s1 + R * s0 after multiplying through by both denominators.
ExactReport series_relation(const std::string& id, const TruncatedSeries& lhs, const RationalFunction& Q,
                            const TruncatedSeries& s1, const RationalFunction& R, const TruncatedSeries& s0) {
  const Polynomial dd = Q.denominator() * R.denominator();
  TruncatedSeries residual = times(dd, lhs) - times(Q.numerator() * R.denominator(), s1) -
                             times(R.numerator() * Q.denominator(), s0);
  ExactReport out{id, true, -1, residual.order() + 1, ""};
  const long bad = residual.first_nonzero();
  if (bad >= 0) {
    out.pass = false;
    out.first_failure = bad;
    out.detail = "residual coefficient x^" + std::to_string(bad) + " = " + to_string(residual[bad]);
  }
  return out;
}

}  // namespace

ExactReport verify_relation(const ShiftQuad& quad, const RationalFunction& Q, const RationalFunction& R,
                            const GenericPoint& p, long order) {
  const TruncatedSeries lhs = shifted_series(quad, p, order);
  const TruncatedSeries f1 = shifted_series({1, 1, 1, 0}, p, order);
  const TruncatedSeries f0 = shifted_series({0, 0, 0, 0}, p, order);
  return series_relation("three_term(" + quad.to_string() + ")", lhs, Q, f1, R, f0);
}

ExactReport verify_three_term(const ShiftQuad& quad, const GenericPoint& point, long order) {
  QRPair qr = compute_QR(quad, point);
  ExactReport rep = verify_relation(quad, qr.Q, qr.R, point, order);
  if (qr.swapped) rep.detail += rep.detail.empty() ? "k,l swapped" : "; k,l swapped";
  return rep;
}

ExactReport verify_corollary(const ShiftQuad& quad, const GenericPoint& point) {
  const Rational &q = point.q, &a = point.a, &b = point.b, &c = point.c;
  const GenericPoint up = point.shifted(1, 1, 1);
  const RationalFunction lhs = compute_Q(quad.shifted_down(), up);
  const Polynomial factor = Polynomial(std::vector<Rational>{0, c, -a * b * q}) *
                            Rational((1 - a * q) * (1 - b * q) / ((1 - c) * (1 - c * q)));
  const RationalFunction rhs = RationalFunction(factor) * compute_R(quad, point);
  const Polynomial cross = lhs.numerator() * rhs.denominator() - rhs.numerator() * lhs.denominator();
  ExactReport out{"corollary(" + quad.to_string() + ")", cross.is_zero(), -1, 1, ""};
  if (!out.pass) {
    out.first_failure = cross.valuation();
    out.detail = "cross-multiplied difference has degree " + std::to_string(cross.degree());
  }
  return out;
}

GeneralRelation general_three_term(const ShiftQuad& quad1, const ShiftQuad& quad2, const GenericPoint& point,
                                   long order) {
  QRPair one = compute_QR(quad1, point);
  QRPair two = compute_QR(quad2, point);
  if (two.Q.is_zero()) throw NonGenericError("elimination needs Q(quad2) != 0");
  GeneralRelation out;
  out.Q = one.Q / two.Q;
  out.R = one.R - out.Q * two.R;
  out.report = series_relation("general(" + quad1.to_string() + ";" + quad2.to_string() + ")",
                               shifted_series(quad1, point, order), out.Q, shifted_series(quad2, point, order), out.R,
                               shifted_series({0, 0, 0, 0}, point, order));
  return out;
}

Rational leading_coefficient(const ShiftQuad& s, const GenericPoint& p) {
  if (s.k > s.l) throw PreconditionError("leading_coefficient needs k <= l");
  if (degree_bound(s) < 0) throw PreconditionError("leading_coefficient needs d >= 0");
  const Rational &q = p.q, &a = p.a, &b = p.b, &c = p.c;
  const auto [k, l, m, n] = std::tuple{s.k, s.l, s.m, s.n};
  const Rational mu = coeff_mu(s, p);
  const Rational common = pow(c / (a * b), k) * pow(q, k * (m - k - l - n + 1));
  if (k == l) {
    return mu * common *
           (pow(a, m - 2 * k - n) * qpoch(a, k, q) * qpoch(a * q / c, k - m, q) -
            pow(b, m - 2 * k - n) * qpoch(b, k, q) * qpoch(b * q / c, k - m, q));
  }
  return mu * common * pow(a, m - k - l - n) * qpoch(a, k, q) * qpoch(a * q / c, k - m, q) *
         rqpoch(a * q / b, k - l, q);
}

ExactReport verify_P_product_form(const ShiftQuad& s, const GenericPoint& p, long order) {
  if (s.k > s.l) throw PreconditionError("product form needs k <= l");
  const Rational &q = p.q, &a = p.a, &b = p.b, &c = p.c;
  const auto [k, l, m, n] = std::tuple{s.k, s.l, s.m, s.n};
  const long S = k + l - m + n;
  const Rational z = a * b * pow(q, S) / c;
  const Rational pre = qpoch(a * q / c, k - m, q) * qpoch(b * q / c, l - m, q) * qpoch(c, m, q) *
                       rqpoch(q * q / c, -m, q) * rqpoch(a, k, q) * rqpoch(b, l, q) * pow(c * pow(q, m - 1), -n);
  auto phi = [&](const Rational& u, const Rational& v, const Rational& w, const Rational& g) -> TruncatedSeries {
    return phi_series_in_x({{u, v}, {w}, g, q}, order);
  };
  CoefficientFamilies fam(s, p);
  struct Family {
    const char* name;
    TruncatedSeries product;
    const Rational& (CoefficientFamilies::*coeff)(long);
  };
  Family fams[] = {
      {"A", pre * (phi(pow(q, 1 - k) / a, pow(q, 1 - l) / b, pow(q, 2 - m) / c, z) * phi(a, b, c, 1)),
       &CoefficientFamilies::A},
      {"B", phi(c * pow(q, m - k) / a, c * pow(q, m - l) / b, c * pow(q, m), z) * phi(a * q / c, b * q / c, q * q / c, 1),
       &CoefficientFamilies::B},
      {"Atilde",
       pre * (phi(a * pow(q, k + 1 - m) / c, b * pow(q, l + 1 - m) / c, pow(q, 2 - m) / c, pow(q, n)) *
              phi(c / a, c / b, c, a * b / c)),
       &CoefficientFamilies::Atilde},
      {"Btilde", phi(a * pow(q, k), b * pow(q, l), c * pow(q, m), pow(q, n)) * phi(q / a, q / b, q * q / c, a * b / c),
       &CoefficientFamilies::Btilde},
  };
  ExactReport out{"product_form(" + s.to_string() + ")", true, -1, 0, ""};
  for (auto& f : fams) {
    for (long j = 0; j <= order; ++j) {
      ++out.checked;
      if ((fam.*f.coeff)(j) != f.product[j]) {
        out.pass = false;
        out.first_failure = j;
        out.detail = std::string("series ") + f.name + " differs at x^" + std::to_string(j);
        return out;
      }
    }
  }
  // Assemble P from the generating series and compare with the double sum.
  const long mplus = std::max(m, 0L);
  TruncatedSeries inner;
  Polynomial outer;
  if (S >= 0) {
    inner = fams[0].product.shifted(mplus - m) - fams[1].product.shifted(mplus);
    outer = x_qpoch(1, std::max(n, 0L), q);
  } else {
    inner = fams[2].product.shifted(mplus - m) - fams[3].product.shifted(mplus);
    outer = x_qpoch(pow(q, std::min(n, 0L)), -std::min(n, 0L), q);
  }
  TruncatedSeries assembled = times(outer, inner);
  const Polynomial P = compute_P_theorem(fam);
  for (long j = 0; j <= order; ++j) {
    ++out.checked;
    if (assembled[j] != P.coefficient(j)) {
      out.pass = false;
      out.first_failure = j;
      out.detail = j > P.degree() && j > degree_bound(s) ? "assembled series does not stop at degree d"
                                                         : "assembled series differs from P";
      return out;
    }
  }
  return out;
}

ExactReport verify_vanishing_thresholds(const ShiftQuad& s, const GenericPoint& p, long extra) {
  if (s.k > s.l) throw PreconditionError("thresholds need k <= l");
  const Rational& q = p.q;
  const auto [k, l, m, n] = std::tuple{s.k, s.l, s.m, s.n};
  const long S = k + l - m + n;
  CoefficientFamilies fam(s, p);
  ExactReport out{"thresholds(" + s.to_string() + ")", true, -1, 0, ""};
  auto run = [&](const char* label, long from, auto&& value) {
    for (long j = from; j <= from + extra; ++j) {
      ++out.checked;
      if (!is_zero(value(j)) && out.pass) {
        out.pass = false;
        out.first_failure = j;
        out.detail = std::string(label) + " nonzero at j = " + std::to_string(j);
      }
    }
  };
  auto wpos = [&](long i) -> Rational { return qpoch(pow(q, -n), i, q) * rqpoch(q, i, q); };
  auto wneg = [&](long i) -> Rational { return qpoch(pow(q, n), i, q) * rqpoch(q, i, q); };
  if (S >= 0 && n >= 0) {
    run("(i)", l + n, [&](long j) {
      Rational acc = 0;
      for (long i = 0; i <= n; ++i) acc += wpos(i) * pow(q, n * i) * (fam.A(j - i) - fam.B(j - i - m));
      return acc;
    });
    run("(i) C/D", std::max(l, l - m) + n, [&](long j) {
      Rational acc = 0;
      for (long i = 0; i <= n; ++i) acc += wpos(i) * pow(q, i) * (fam.C(j - i) - fam.D(j - i + k - l));
      return acc;
    });
  }
  if (S >= 0 && n <= 0) {
    run("(ii)", l, [&](long j) { return Rational(fam.A(j) - fam.B(j - m)); });
    run("(ii) C/D", std::max(l, l - m), [&](long j) { return Rational(fam.C(j) - fam.D(j + k - l)); });
  }
  if (S <= 0 && n >= 0) {
    run("(iii)", m - k, [&](long j) { return Rational(fam.Atilde(j) - fam.Btilde(j - m)); });
    run("(iii) C/D", std::max(-k, m - k), [&](long j) { return Rational(fam.Ctilde(j) - fam.Dtilde(j + k - l)); });
  }
  if (S <= 0 && n <= 0) {
    run("(iv)", m - k - n, [&](long j) {
      Rational acc = 0;
      for (long i = 0; i <= -n; ++i) acc += wneg(i) * (fam.Atilde(j - i) - fam.Btilde(j - i - m));
      return acc;
    });
    run("(iv) C/D", std::max(-k, m - k) - n, [&](long j) {
      Rational acc = 0;
      for (long i = 0; i <= -n; ++i) acc += wneg(i) * pow(q, (1 - n) * i) * (fam.Ctilde(j - i) - fam.Dtilde(j - i + k - l));
      return acc;
    });
  }
  return out;
}

}  // namespace qhyper
