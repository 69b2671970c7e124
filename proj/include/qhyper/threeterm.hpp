#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhyper/polynomial.hpp"
#include "qhyper/qpoch.hpp"
#include "qhyper/series.hpp"

namespace qhyper {

/// Shift (k, l, m, n): the relation expresses
///   2phi1(a q^k, b q^l; c q^m; q, x q^n)
/// through 2phi1(aq, bq; cq; q, x) and 2phi1(a, b; c; q, x).
struct ShiftQuad {
  long k = 0;
  long l = 0;
  long m = 0;
  long n = 0;

  ShiftQuad shifted_down() const { return {k - 1, l - 1, m - 1, n}; }
  std::string to_string() const;
  friend bool operator==(const ShiftQuad&, const ShiftQuad&) = default;
  friend auto operator<=>(const ShiftQuad&, const ShiftQuad&) = default;
};

ShiftQuad parse_quad(const std::string& text);  // "k,l,m,n"

/// k <= l orientation; a and b trade places together with k and l.
struct Canonical {
  ShiftQuad quad;
  GenericPoint point;
  bool swapped = false;
};
Canonical canonicalize(const ShiftQuad& quad, const GenericPoint& point);

/// max{k+l-m+n, 0} + max{m, 0} - min{n, 0} - k - 1
long degree_bound(const ShiftQuad& quad);

/// Coefficient families entering both closed forms of P. Every family is
/// zero at negative index. Values are cached per instance; the object
/// assumes k <= l and a generic point.
class CoefficientFamilies {
 public:
  CoefficientFamilies(const ShiftQuad& quad, const GenericPoint& point);

  const ShiftQuad& quad() const { return quad_; }
  const GenericPoint& point() const { return p_; }

  const Rational& A(long j);
  const Rational& B(long j);
  const Rational& Atilde(long j);
  const Rational& Btilde(long j);
  const Rational& C(long j);
  const Rational& D(long j);
  const Rational& Ctilde(long j);
  const Rational& Dtilde(long j);

  const Rational& mu() const { return mu_; }
  const Rational& mu1() const { return mu1_; }
  const Rational& mu2() const { return mu2_; }

 private:
  using Cache = std::map<long, Rational>;
  const Rational& memo(Cache& cache, long j, Rational (CoefficientFamilies::*fn)(long) const);
  Rational eval_A(long j) const;
  Rational eval_B(long j) const;
  Rational eval_At(long j) const;
  Rational eval_Bt(long j) const;
  Rational eval_C(long j) const;
  Rational eval_D(long j) const;
  Rational eval_Ct(long j) const;
  Rational eval_Dt(long j) const;
  Rational qp(const Rational& z, long n) const { return qpoch(z, n, p_.q); }
  Rational rqp(const Rational& z, long n) const { return rqpoch(z, n, p_.q); }
  Rational qpow(long e) const { return pow(p_.q, e); }

  ShiftQuad quad_;
  GenericPoint p_;
  Rational mu_, mu1_, mu2_;
  Cache a_, b_, at_, bt_, c_, d_, ct_, dt_;
  static const Rational kZero;
};

Rational coeff_A(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_B(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_Atilde(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_Btilde(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_C(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_D(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_Ctilde(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_Dtilde(long j, const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_mu(const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_mu1(const ShiftQuad& quad, const GenericPoint& point);
Rational coeff_mu2(const ShiftQuad& quad, const GenericPoint& point);

/// P via the A/B (or A~/B~) double sum; zero polynomial when d < 0.
/// Requires k <= l.
Polynomial compute_P_theorem(const ShiftQuad& quad, const GenericPoint& point);
Polynomial compute_P_theorem(CoefficientFamilies& fam);

/// P via mu and the C/D (or C~/D~) sums, coefficients attached to x^{d-j}.
Polynomial compute_P_proposition(const ShiftQuad& quad, const GenericPoint& point);
Polynomial compute_P_proposition(CoefficientFamilies& fam);

/// Q and R as reduced fractions in x. Any orientation of (k, l) is accepted.
RationalFunction compute_Q(const ShiftQuad& quad, const GenericPoint& point);
RationalFunction compute_R(const ShiftQuad& quad, const GenericPoint& point);

struct QRPair {
  RationalFunction Q;
  RationalFunction R;
  bool swapped = false;
};
QRPair compute_QR(const ShiftQuad& quad, const GenericPoint& point);

/// Exact check outcome. first_failure is a coefficient index or -1.
struct ExactReport {
  std::string identity_id;
  bool pass = false;
  long first_failure = -1;
  long checked = 0;
  std::string detail;
};

/// Clears denominators in
///   phi(a q^k, b q^l; c q^m; x q^n) = Q phi(aq, bq; cq; x) + R phi(a, b; c; x)
/// and checks every coefficient through x^order.
ExactReport verify_three_term(const ShiftQuad& quad, const GenericPoint& point, long order);
ExactReport verify_relation(const ShiftQuad& quad, const RationalFunction& Q, const RationalFunction& R,
                            const GenericPoint& point, long order);

/// Q(k-1, l-1, m-1, n) at (aq, bq, cq) against
/// (1-aq)(1-bq) x (c - abqx) / ((1-c)(1-cq)) * R(k, l, m, n).
ExactReport verify_corollary(const ShiftQuad& quad, const GenericPoint& point);

struct GeneralRelation {
  RationalFunction Q;  // multiplies phi(shift quad2)
  RationalFunction R;  // multiplies phi(a, b; c; x)
  ExactReport report;
};

/// Relation between the shifts quad1 and quad2 and the unshifted series,
/// obtained by eliminating phi(aq, bq; cq; x). Throws NonGenericError when
/// Q(quad2) vanishes.
GeneralRelation general_three_term(const ShiftQuad& quad1, const ShiftQuad& quad2, const GenericPoint& point,
                                   long order);

/// Closed form for the x^d coefficient of P. Requires k <= l and d >= 0.
Rational leading_coefficient(const ShiftQuad& quad, const GenericPoint& point);

/// Generating series of the four families against products of two 2phi1,
/// and the assembled product form of P against compute_P_theorem (which
/// includes vanishing above degree d).
ExactReport verify_P_product_form(const ShiftQuad& quad, const GenericPoint& point, long order);

/// The four vanishing statements for A/B and the four for C/D, checked for
/// j from the threshold through threshold + extra on every branch that
/// applies to the quad.
ExactReport verify_vanishing_thresholds(const ShiftQuad& quad, const GenericPoint& point, long extra = 15);

}  // namespace qhyper
