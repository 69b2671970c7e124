#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "qhyper/bounded.hpp"
#include "qhyper/polynomial.hpp"
#include "qhyper/qpoch.hpp"
#include "qhyper/series.hpp"
#include "qhyper/threeterm.hpp"

namespace qhyper {

/// Truncated Laurent series  sum_{e >= low} c_e u^e + O(u^precision).
/// Polynomials carry precision kExact.
class LaurentSeries {
 public:
  static constexpr long kExact = std::numeric_limits<long>::max() / 4;

  LaurentSeries() = default;
  LaurentSeries(long low, std::vector<Rational> coeffs, long precision);
  static LaurentSeries from_series(const TruncatedSeries& s);
  static LaurentSeries from_polynomial(const Polynomial& p);
  static LaurentSeries monomial(const Rational& c, long e);

  long low() const { return low_; }
  long precision() const { return prec_; }
  // One past the last stored exponent (never beyond precision()).
  long stored_end() const { return std::min(prec_, low_ + static_cast<long>(c_.size())); }
  bool exact() const { return prec_ >= kExact; }
  Rational coefficient(long e) const;
  // Exponent of the first nonzero known coefficient; precision() if none.
  long valuation() const;

  LaurentSeries shifted(long e) const;                   // u^e f
  LaurentSeries scaled_argument(const Rational& g) const;  // f(g u)
  LaurentSeries truncated(long precision) const;

  LaurentSeries& operator*=(const Rational& s);
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(LaurentSeries a, const Rational& s) { return a *= s; }
  friend LaurentSeries operator*(const Rational& s, LaurentSeries a) { return a *= s; }
  // b needs a known nonzero coefficient; relative precision is kept.
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

 private:
  long low_ = 0;
  std::vector<Rational> c_;
  long prec_ = kExact;
};

struct SeriesComparison {
  bool equal = false;
  long checked_to = -1;     // last exponent compared
  long first_mismatch = 0;  // meaningful when !equal
};
/// Compares every exponent below the smaller precision.
SeriesComparison compare_series(const LaurentSeries& a, const LaurentSeries& b);

enum class SolutionKind { y1, y2, y3, y4 };
std::string to_string(SolutionKind kind);
inline bool at_infinity(SolutionKind k) { return k == SolutionKind::y3 || k == SolutionKind::y4; }

/// Where a solution lives: base point shifted by (k, l, m), argument x q^n.
/// The local variable is u = x q^n for y1, y2 and u = c q^{1-n}/(a b x) for
/// y3, y4, with (a, b, c) the shifted parameters.
struct Frame {
  GenericPoint base;
  ShiftQuad shift;
  GenericPoint params() const { return base.shifted(shift.k, shift.l, shift.m); }
};

/// value = scalar * tag(kind, frame) * series(u). The tag is the product of
/// the infinite-product constant of the normalized series and the symbolic
/// factors x^{1-gamma}, a^{gamma-alpha-beta+1} x^{-alpha}, ...; it is never
/// evaluated.
struct TaggedSolution {
  SolutionKind kind = SolutionKind::y1;
  Frame frame;
  Rational scalar = 1;
  LaurentSeries series;
  long effective_order() const { return series.precision() - 1; }
};

/// tag(frame.base shifted by quad) / tag(frame.base at shift 0) as
/// factor * x^x_power. Uses q^alpha = a, q^beta = b, q^gamma = c.
struct TagRatio {
  Rational factor;
  long x_power = 0;
};
TagRatio tag_ratio(SolutionKind kind, const GenericPoint& base, const ShiftQuad& quad);

/// The factor f with T tag = f tag: 1, q/c, 1/a, 1/b.
Rational tag_step_factor(SolutionKind kind, const GenericPoint& params);

TaggedSolution make_solution(SolutionKind kind, const GenericPoint& base, long order,
                             const ShiftQuad& shift = ShiftQuad{});

/// Re-expresses the same function in another frame over the same base.
/// The result has scalar 1.
TaggedSolution reexpress(const TaggedSolution& sol, const ShiftQuad& target);

/// Pulls the u^0 coefficient into the scalar so the series starts with 1.
TaggedSolution normalized(const TaggedSolution& sol);

/// sum_t r_t(x) T^t, T x = q x T.
class QDifferenceOperator {
 public:
  QDifferenceOperator() = default;
  QDifferenceOperator(Rational q, std::vector<RationalFunction> coeffs);
  static QDifferenceOperator identity(const Rational& q);

  const Rational& q() const { return q_; }
  long order() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<RationalFunction>& coefficients() const { return c_; }
  RationalFunction coefficient(long t) const;

  // (A B) y = A(B y)
  friend QDifferenceOperator operator*(const QDifferenceOperator& a, const QDifferenceOperator& b);
  friend QDifferenceOperator operator+(const QDifferenceOperator& a, const QDifferenceOperator& b);
  friend QDifferenceOperator operator-(const QDifferenceOperator& a, const QDifferenceOperator& b);
  friend bool operator==(const QDifferenceOperator& a, const QDifferenceOperator& b);

 private:
  void trim();
  Rational q_;
  std::vector<RationalFunction> c_;
};

/// Applies op to sol and returns the resulting series in sol's own frame.
TaggedSolution apply_operator(const QDifferenceOperator& op, const TaggedSolution& sol);

/// L at the given parameters, with x replaced by x q^n.
QDifferenceOperator operator_L(const GenericPoint& params, long n = 0);
QDifferenceOperator operator_Delta(const Rational& q, long n = 0);

enum class ContiguityOp { H1, H2, H3, H4, B1, B2, B3, B4 };
std::string to_string(ContiguityOp op);
ContiguityOp parse_contiguity_op(const std::string& name);

/// Operator at the given parameters acting on functions of x q^n, and the
/// shift it produces.
QDifferenceOperator contiguity_operator(ContiguityOp op, const GenericPoint& params, long n = 0);
ShiftQuad contiguity_shift(ContiguityOp op);

/// The scalar s with op y_i = s y_i(shifted), i.e. 1 for y1, y2 and the
/// -a, -q/a, ... for y3, y4 (1 for the x operators).
Rational contiguity_scalar(ContiguityOp op, SolutionKind kind, const GenericPoint& params);

TaggedSolution apply_L(const TaggedSolution& sol);
/// Result lives in the shifted frame.
TaggedSolution apply_contiguity(ContiguityOp op, const TaggedSolution& sol);
/// Result lives in the frame shifted by (1, 1, 1, 0).
TaggedSolution apply_Delta(const TaggedSolution& sol);

/// Operator sequence for theta in the fixed order a, b, c, x.
std::vector<ContiguityOp> theta_sequence(const ShiftQuad& quad);
TaggedSolution theta(const ShiftQuad& quad, const TaggedSolution& sol);
/// Same composition with an arbitrary operator order.
TaggedSolution apply_sequence(const std::vector<ContiguityOp>& ops, const TaggedSolution& sol);
/// theta as an element of the operator ring, built at base parameters.
QDifferenceOperator theta_operator(const ShiftQuad& quad, const GenericPoint& base);

/// theta = p L + Qhat T + Rhat, returned as (Qtilde, Rtilde) with
/// theta = p L + Qtilde Delta + Rtilde.
struct OreRemainder {
  RationalFunction Qtilde;
  RationalFunction Rtilde;
};
OreRemainder reduce_modulo_L(const QDifferenceOperator& theta_op, const GenericPoint& base);

/// Qtilde = (aq)_{k-1} (bq)_{l-1} / (cq)_{m-1} Q,  Rtilde = (a)_k (b)_l / (c)_m R.
OreRemainder normalized_QR(const ShiftQuad& quad, const GenericPoint& base);

/// (-1)^{k+l-m} a^k b^l c^{-m} q^{(k(k-1) + l(l-1) - m(m-1))/2}
Rational theta_lambda(const ShiftQuad& quad, const GenericPoint& base);

/// Check outcome for one identity of the suite.
struct ContiguityCheck {
  std::string identity_id;
  bool pass = false;
  long effective_order = -1;
  long first_mismatch = -1;
  std::string detail;
};

/// One operator on one kind: op y_i == scalar * y_i(shifted).
ContiguityCheck verify_contiguity_step(ContiguityOp op, SolutionKind kind, const GenericPoint& base, long order);
ContiguityCheck verify_L_annihilates(SolutionKind kind, const GenericPoint& base, long order);
ContiguityCheck verify_Delta_step(SolutionKind kind, const GenericPoint& base, long order);
/// H_j B_j and B_j H_j on y1 give back y1.
ContiguityCheck verify_inverse_pair(ContiguityOp h, const GenericPoint& base, long order);
/// theta(quad) y_i against the scalar (1 or lambda) times the shifted solution.
ContiguityCheck verify_theta_shift(const ShiftQuad& quad, SolutionKind kind, const GenericPoint& base, long order);
/// Every interleaving of the operators reaching quad gives the same result.
ContiguityCheck verify_theta_order_independence(const ShiftQuad& quad, SolutionKind kind, const GenericPoint& base,
                                                long order);
/// theta y_i = Qtilde y_i(aq, bq, cq) + Rtilde y_i, with lambda for i = 3, 4.
ContiguityCheck verify_theta_relation(const ShiftQuad& quad, SolutionKind kind, const GenericPoint& base, long order);
/// Reduction of theta modulo L reproduces the normalized Q and R.
ContiguityCheck verify_ore_reduction(const ShiftQuad& quad, const GenericPoint& base);

/// det(y_i, y_j; T y_i, T y_j) divided by scalar-free tags.
struct CasoratianResult {
  LaurentSeries series;         // bracket computed from the solutions
  LaurentSeries closed_series;  // the closed form's x-dependent part
  BoundedValue scalar;          // tag constants times the rational prefactor
  BoundedValue closed_scalar;   // constant of the closed form
};
CasoratianResult casoratian(bool at_zero, const GenericPoint& base, long order, const Rational& eps);
ContiguityCheck verify_casoratian(bool at_zero, const GenericPoint& base, long order, const Rational& eps);

/// Y = y1(shifted) y2 - y2(shifted) y1 = lambda1 x^{1-gamma} Yhat and
/// Ytilde = y3(shifted) y4 - y4(shifted) y3 = lambda2 x^{-alpha-beta} Ythat.
/// The returned series are Yhat in x and Ythat in w = cq/(abx).
LaurentSeries Y_series(const ShiftQuad& quad, const GenericPoint& base, long order);
LaurentSeries Ytilde_series(const ShiftQuad& quad, const GenericPoint& base, long order);

BoundedValue lambda1(const GenericPoint& p, const Rational& eps);
/// lambda2 without its symbolic factor (ab)^{gamma-alpha-beta+1}.
BoundedValue lambda2_products(const GenericPoint& p, const Rational& eps);

/// Y and Ytilde against P and Ptilde, the (1,1,1,0) closed forms,
/// the determinant identities and the ratios giving Qtilde. Also checks the
/// product form of Ptilde. Requires k <= l.
ContiguityCheck verify_Y_P_link(const ShiftQuad& quad, const GenericPoint& base, long order, const Rational& eps);
ContiguityCheck verify_Ptilde_product_form(const ShiftQuad& quad, const GenericPoint& base, long order);

/// Runs everything above on the default shift set. Used by the CLI and the
/// acceptance binary.
std::vector<ContiguityCheck> contiguity_suite(const GenericPoint& base, long order, const Rational& eps);

}  // namespace qhyper
