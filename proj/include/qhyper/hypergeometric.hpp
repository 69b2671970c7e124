#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qhyper/bounded.hpp"
#include "qhyper/rational.hpp"
#include "qhyper/series.hpp"

namespace qhyper {

/// r+1 phi r with the given parameter lists. When used as a series in x the
/// argument is the scale g of the indeterminate (the series is in g x).
struct PhiSpec {
  std::vector<Rational> numerator;
  std::vector<Rational> denominator;
  Rational argument;
  Rational q;
};

/// Coefficients t_i = prod (u)_i / ((q)_i prod (v)_i) g^i, i <= order.
TruncatedSeries phi_series_in_x(const PhiSpec& spec, long order);

/// Smallest j >= 0 with some numerator parameter equal to q^{-j}, searching
/// |j| <= window. Such a series is a polynomial of degree j in its argument.
std::optional<long> terminating_degree(const PhiSpec& spec, long window = 64);

/// Exact partial sum over i = 0..last.
Rational phi_partial_sum(const PhiSpec& spec, long last);

/// Terminating series are summed exactly. Otherwise |argument| < 1 is
/// required and terms are summed until the tail, dominated by a geometric
/// series in the worst-case term ratio, is at most eps.
BoundedValue phi_value(const PhiSpec& spec, const Rational& eps);

/// 4phi3(q^{-j}, b1, b2, b3; c1, c2, c3; q, arg), exact; 0 for j < 0 is not
/// assumed here, callers handle the sign of j.
Rational phi4_3_terminating(long j, const std::array<Rational, 3>& b, const std::array<Rational, 3>& c,
                            const Rational& arg, const Rational& q);

struct PhiTilde {
  BoundedValue scalar;     // (q)_inf (c)_inf / ((a)_inf (b)_inf)
  TruncatedSeries series;  // 2phi1(a, b; c; q, x)
};

PhiTilde phi_tilde_2_1(const Rational& a, const Rational& b, const Rational& c, const Rational& q, long order,
                       const Rational& eps);

/// Parameters of the multiple series
///   sum over i_1..i_r of (a)_{|i|} prod (b_v)_{i_v} / ((c)_{|i|} prod (q)_{i_v}) prod x_v^{i_v}.
struct MultiPhiDSpec {
  Rational a;
  std::vector<Rational> b;
  Rational c;
  std::vector<Rational> x;
  Rational q;
};

/// Evaluates phi_D over the box i_v <= caps[v] and bounds the rest. An index
/// with b_v = q^{-n} stops at n on its own; other indices need |x_v| < 1.
/// An empty caps vector picks caps so that the bound is at most eps.
BoundedValue phi_D(const MultiPhiDSpec& spec, const std::vector<long>& caps, const Rational& eps);

/// (c)_inf / (a)_inf times phi_D, written termwise as
/// (c q^{|i|})_inf / (a q^{|i|})_inf. Stays finite when c = q^{-e}.
BoundedValue phi_D_tilde(const MultiPhiDSpec& spec, const std::vector<long>& caps, const Rational& eps);

struct SeriesCheck {
  std::string name;
  bool pass = false;
  long first_mismatch = -1;  // coefficient index, -1 when none
};

/// phi(a,b;c;gx) phi(d,e;f;hx) against the coefficient formula with a
/// terminating 4phi3 for every x^j, j <= order.
SeriesCheck product_formula_check(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                  const Rational& e, const Rational& f, const Rational& g, const Rational& h,
                                  const Rational& q, long order);

/// sum_{i<=n} (q^{-n})_i/(q)_i x^i == (x q^{-n})_n for n = 0..nmax.
SeriesCheck qbinomial_finite_check(const Rational& x, const Rational& q, long nmax);

/// 1phi0(a;-;x) == (ax)_inf / (x)_inf as series to the given order.
SeriesCheck qbinomial_series_check(const Rational& a, const Rational& q, long order);

/// Heine's q-Euler transformation as series identity in x:
/// (x)_inf phi(a,b;c;x) == (abx/c)_inf phi(c/a, c/b; c; abx/c).
SeriesCheck heine_check(const Rational& a, const Rational& b, const Rational& c, const Rational& q, long order);

}  // namespace qhyper
