#include "doctest.h"

#include "qhyper/bounded.hpp"
#include "qhyper/polynomial.hpp"
#include "qhyper/qpoch.hpp"
#include "qhyper/series.hpp"

using namespace qhyper;

TEST_CASE("series ring basics") {
  const long N = 12;
  std::vector<Rational> geo(N + 1, Rational(1));
  TruncatedSeries g(N, geo);
  TruncatedSeries one_minus_x(N, {1, -1});
  CHECK(one_minus_x * g == TruncatedSeries::constant(1, N));
  CHECK(g / g == TruncatedSeries::constant(1, N));
  CHECK(TruncatedSeries::constant(1, N) / one_minus_x == g);
  CHECK_THROWS_AS(g / TruncatedSeries(N, {0, 1}), PreconditionError);
}

TEST_CASE("division agrees with an independently expanded reciprocal") {
  const Rational q = make_rational(2, 7);
  const Rational z = make_rational(-3, 5);
  const long N = 20;
  TruncatedSeries num(N, {1, 2, make_rational(1, 3), -4});
  // 1/(zx;q)_inf expanded by Euler's formula, vs division by the product expansion
  CHECK(num / x_qpoch_inf(z, q, N) == num * x_qpoch_inf_reciprocal(z, q, N));
}

TEST_CASE("euler expansion matches long finite products") {
  // Coefficients of (zx;q)_J converge to those of (zx;q)_inf as J grows; the
  // difference at x^k is O(|q|^J). Check it numerically against J = 400.
  const Rational q = make_rational(1, 3);
  const Rational z = make_rational(5, 4);
  const long N = 6;
  TruncatedSeries inf = x_qpoch_inf(z, q, N);
  TruncatedSeries finite = TruncatedSeries::constant(1, N);
  for (long j = 0; j < 400; ++j) finite = finite * TruncatedSeries(N, {1, -z * pow(q, j)});
  for (long k = 0; k <= N; ++k) CHECK(abs(inf[k] - finite[k]) < parse_rational("1e-150"));
}

TEST_CASE("mixed orders truncate") {
  TruncatedSeries a(5, {1, 1, 1, 1, 1, 1});
  TruncatedSeries b(3, {1, 0, 0, 1});
  CHECK((a + b).order() == 3);
  CHECK((a * b).order() == 3);
  CHECK(a.shifted(2).coefficient(2) == 1);
  CHECK(a.shifted(2).coefficient(1) == 0);
  CHECK(a.unshifted(2).order() == 3);
}

TEST_CASE("polynomial arithmetic") {
  Polynomial p(std::vector<Rational>{1, 2, 1});  // (1+x)^2
  Polynomial lin(std::vector<Rational>{1, 1});
  Polynomial quot;
  Polynomial rem;
  Polynomial::divmod(p, lin, &quot, &rem);
  CHECK(quot == lin);
  CHECK(rem.is_zero());
  CHECK(Polynomial::gcd(p * Polynomial(std::vector<Rational>{2, 3}), lin * Polynomial(std::vector<Rational>{5, 0, 1})) == lin);
  CHECK(p.evaluate(make_rational(1, 2)) == make_rational(9, 4));
  CHECK(p.scaled_argument(2) == Polynomial(std::vector<Rational>{1, 4, 4}));
}

TEST_CASE("rational functions reduce") {
  Polynomial lin(std::vector<Rational>{1, 1});
  Polynomial other(std::vector<Rational>{3, -1});
  RationalFunction f(lin * other * Rational(4), lin * Rational(2));
  CHECK(f.denominator() == Polynomial(1));
  CHECK(f.numerator() == other * Rational(2));
  RationalFunction g = RationalFunction::x_power(-2) * RationalFunction::x_power(3);
  CHECK(g == RationalFunction(Polynomial::x()));
  const Rational q = make_rational(1, 3);
  RationalFunction h = RationalFunction::x_qpoch(make_rational(1, 2), -2, q) * RationalFunction::x_qpoch(make_rational(9, 2), 2, q);
  CHECK(h == RationalFunction(Polynomial(1)));
}

TEST_CASE("x_qpoch matches scalar qpoch") {
  const Rational q = make_rational(3, 7);
  const Rational z = make_rational(2, 5);
  const Rational x = make_rational(-4, 9);
  for (long n = 0; n <= 6; ++n) CHECK(x_qpoch(z, n, q).evaluate(x) == qpoch(z * x, n, q));
}

// ---------------------------------------------------------------------------
// hypergeometric evaluators

#include "qhyper/hypergeometric.hpp"

namespace {
const Rational kQ = make_rational(3, 7);
const Rational kA = make_rational(2, 5);
const Rational kB = make_rational(3, 11);
const Rational kC = make_rational(5, 13);
}  // namespace

TEST_CASE("phi series coefficients") {
  TruncatedSeries s = phi_series_in_x({{kA, kB}, {kC}, 1, kQ}, 10);
  CHECK(s[0] == 1);
  CHECK(s[1] == (1 - kA) * (1 - kB) / ((1 - kQ) * (1 - kC)));
  TruncatedSeries scaled = phi_series_in_x({{kA, kB}, {kC}, make_rational(-2, 3), kQ}, 10);
  CHECK(scaled == s.scaled_argument(make_rational(-2, 3)));
}

TEST_CASE("q-binomial theorem, series and finite forms") {
  CHECK(qbinomial_series_check(kA, kQ, 20).pass);
  CHECK(qbinomial_series_check(make_rational(-7, 2), make_rational(1, 5), 25).pass);
  for (const auto& x : {make_rational(1, 3), make_rational(-5, 2), make_rational(7, 1)}) {
    CHECK(qbinomial_finite_check(x, kQ, 12).pass);
  }
}

TEST_CASE("heine transformation") {
  CHECK(heine_check(kA, kB, kC, kQ, 30).pass);
  CHECK(heine_check(make_rational(-3, 2), make_rational(7, 4), make_rational(1, 9), make_rational(-1, 3), 20).pass);
}

TEST_CASE("phi_value on terminating series") {
  const Rational q = make_rational(1, 3);
  // two-term cancellation
  CHECK(phi_value({{1 / q, kC}, {kC}, q, q}, make_rational(1, 1000)).value == 0);
  CHECK(phi_value({{1 / q, kC}, {kC}, q, q}, make_rational(1, 1000)).exact());
  // a numerator parameter 1 leaves only the constant term
  CHECK(phi_value({{1, kB}, {kC}, make_rational(5, 1), q}, make_rational(1, 1000)).value == 1);
}

TEST_CASE("phi_value against the q-binomial product") {
  const Rational q = make_rational(1, 3);
  const Rational a = make_rational(1, 2);
  const Rational x = make_rational(1, 4);
  const Rational eps = parse_rational("1e-40");
  BoundedValue lhs = phi_value({{a}, {}, x, q}, eps);
  BoundedValue rhs = qpoch_inf(a * x, q, eps) / qpoch_inf(x, q, eps);
  CHECK(lhs.error_bound <= eps);
  CHECK(compare(lhs, rhs, parse_rational("1e-35")).pass());
  // a wrong right-hand side is rejected
  CHECK_FALSE(compare(lhs, rhs + BoundedValue(parse_rational("1e-30")), parse_rational("1e-35")).pass());
  CHECK_THROWS_AS(phi_value({{a}, {}, make_rational(3, 2), q}, eps), PreconditionError);
}

TEST_CASE("terminating 4phi3") {
  const std::array<Rational, 3> b{kA, kB, make_rational(7, 3)};
  const std::array<Rational, 3> c{kC, make_rational(-1, 2), make_rational(9, 4)};
  const Rational arg = make_rational(5, 6);
  CHECK(phi4_3_terminating(0, b, c, arg, kQ) == 1);
  const Rational one = 1 + (1 - 1 / kQ) * (1 - b[0]) * (1 - b[1]) * (1 - b[2]) * arg /
                               ((1 - kQ) * (1 - c[0]) * (1 - c[1]) * (1 - c[2]));
  CHECK(phi4_3_terminating(1, b, c, arg, kQ) == one);
  // generic evaluator on the same terminating spec
  PhiSpec spec{{pow(kQ, -4), b[0], b[1], b[2]}, {c[0], c[1], c[2]}, arg, kQ};
  CHECK(phi_value(spec, make_rational(1, 10)).value == phi4_3_terminating(4, b, c, arg, kQ));
  CHECK(phi_value(spec, make_rational(1, 10)).exact());
}

TEST_CASE("normalized 2phi1") {
  const Rational eps = parse_rational("1e-40");
  PhiTilde t = phi_tilde_2_1(kA, kB, kC, kQ, 15, eps);
  CHECK(t.series == phi_series_in_x({{kA, kB}, {kC}, 1, kQ}, 15));
  BoundedValue direct = qpoch_inf(kQ, kQ, eps) * qpoch_inf(kC, kQ, eps) / (qpoch_inf(kA, kQ, eps) * qpoch_inf(kB, kQ, eps));
  CHECK(compare(t.scalar, direct, parse_rational("1e-35")).pass());
  // a = q: the prefactor collapses to (c)_inf / (b)_inf
  PhiTilde s = phi_tilde_2_1(kQ, kB, kC, kQ, 5, eps);
  CHECK(compare(s.scalar, qpoch_inf(kC, kQ, eps) / qpoch_inf(kB, kQ, eps), parse_rational("1e-35")).pass());
  // value at x = 1/5 against summing the 2phi1 directly
  BoundedValue full = phi_value({{kA, kB}, {kC}, make_rational(1, 5), kQ}, eps);
  CHECK(full.contains(phi_series_in_x({{kA, kB}, {kC}, make_rational(1, 5), kQ}, 200).evaluate(1)));
  CHECK_FALSE(full.contains(phi_series_in_x({{kA, kB}, {kC}, make_rational(1, 5), kQ}, 20).evaluate(1)));
}

TEST_CASE("phi_D reductions") {
  const Rational q = make_rational(1, 3);
  const Rational eps = parse_rational("1e-40");
  // b = 1 kills every index but zero
  MultiPhiDSpec trivial{kA, {1, 1}, kC, {make_rational(1, 2), make_rational(1, 3)}, q};
  CHECK(phi_D(trivial, {}, eps).value == 1);
  // r = 1 is a 2phi1
  MultiPhiDSpec one{make_rational(1, 4), {kB}, kC, {make_rational(2, 5)}, q};
  BoundedValue d = phi_D(one, {}, eps);
  BoundedValue single = phi_value({{make_rational(1, 4), kB}, {kC}, make_rational(2, 5), q}, eps);
  CHECK(d.error_bound <= eps);
  CHECK(compare(d, single, parse_rational("1e-35")).pass());
  // Andrews' product form at r = 1
  const Rational a = make_rational(1, 4);
  const Rational b1 = kB;
  const Rational x1 = make_rational(2, 5);
  BoundedValue pre = qpoch_inf(a, q, eps) * qpoch_inf(b1 * x1, q, eps) / (qpoch_inf(kC, q, eps) * qpoch_inf(x1, q, eps));
  BoundedValue rhs = pre * phi_value({{kC / a, x1}, {b1 * x1}, a, q}, eps);
  CHECK(compare(d, rhs, parse_rational("1e-35")).pass());
  // all x zero
  MultiPhiDSpec zero{a, {kB, kA}, kC, {0, 0}, q};
  CHECK(phi_D(zero, {}, eps).value == 1);
}

TEST_CASE("phi_D two indices against a long box") {
  const Rational q = make_rational(1, 3);
  const Rational eps = parse_rational("1e-30");
  MultiPhiDSpec spec{make_rational(1, 4), {kB, make_rational(-2, 3)}, kC, {make_rational(1, 3), make_rational(-1, 4)}, q};
  BoundedValue auto_caps = phi_D(spec, {}, eps);
  BoundedValue wide = phi_D(spec, {90, 90}, eps);
  CHECK(auto_caps.error_bound <= eps);
  CHECK(auto_caps.overlaps(wide));
  CHECK(wide.error_bound < auto_caps.error_bound);
}

TEST_CASE("product formula") {
  const Rational d = make_rational(7, 3);
  const Rational e = make_rational(-1, 2);
  const Rational f = make_rational(9, 4);
  CHECK(product_formula_check(kA, kB, kC, d, e, f, make_rational(2, 3), make_rational(-5, 7), kQ, 25).pass);
  CHECK(product_formula_check(kA, kB, kC, d, e, f, 0, make_rational(-5, 7), kQ, 10).pass);
  CHECK(product_formula_check(kA, kB, kC, 1, e, f, make_rational(2, 3), make_rational(-5, 7), kQ, 10).pass);
}
