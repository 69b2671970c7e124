#include <doctest.h>

#include <cmath>

#include "qhyper/contiguity.hpp"

using namespace qhyper;

namespace {

constexpr long kOrder = 18;
const SolutionKind kKinds[] = {SolutionKind::y1, SolutionKind::y2, SolutionKind::y3, SolutionKind::y4};

GenericPoint pt() { return default_point(); }

long double ld(const Rational& r) { return static_cast<long double>(r.get_d()); }

// (z; q)_inf in long double, plenty of factors for |q| <= 1/2.
long double inf_ld(long double z, long double q) {
  long double p = 1;
  long double t = z;
  for (int j = 0; j < 400; ++j, t *= q) p *= 1 - t;
  return p;
}

long double K_ld(long double u, long double v, long double w, long double q) {
  return inf_ld(q, q) * inf_ld(w, q) / (inf_ld(u, q) * inf_ld(v, q));
}

// The tag with real exponents alpha = log a / log q etc.
long double tag_ld(SolutionKind kind, const GenericPoint& base, const ShiftQuad& s, long double x) {
  const GenericPoint p = base.shifted(s.k, s.l, s.m);
  const long double q = ld(p.q), a = ld(p.a), b = ld(p.b), c = ld(p.c);
  const long double lq = std::log(q);
  const long double al = std::log(a) / lq, be = std::log(b) / lq, ga = std::log(c) / lq;
  const long double xs = x * std::pow(q, static_cast<long double>(s.n));
  switch (kind) {
    case SolutionKind::y1: return K_ld(a, b, c, q);
    case SolutionKind::y2: return K_ld(a * q / c, b * q / c, q * q / c, q) * std::pow(xs, 1 - ga);
    case SolutionKind::y3:
      return std::pow(a, ga - al - be + 1) * std::pow(xs, -al) * K_ld(a, a * q / c, a * q / b, q);
    case SolutionKind::y4:
      return std::pow(b, ga - al - be + 1) * std::pow(xs, -be) * K_ld(b, b * q / c, b * q / a, q);
  }
  return 0;
}

LaurentSeries scaled(const TaggedSolution& s) { return s.series * s.scalar; }

}  // namespace

TEST_CASE("Laurent arithmetic") {
  const LaurentSeries one_minus_u = LaurentSeries::from_polynomial(Polynomial(std::vector<Rational>{1, -1}));
  const LaurentSeries geom = LaurentSeries::from_series(TruncatedSeries::constant(1, 10)) / one_minus_u;
  CHECK(geom.precision() == 11);
  for (long e = 0; e <= 10; ++e) CHECK(geom.coefficient(e) == 1);
  // (u^-1 + 1) u = 1 + u
  const LaurentSeries lp = LaurentSeries::monomial(1, -1) + LaurentSeries::monomial(1, 0);
  const LaurentSeries prod = lp * LaurentSeries::monomial(1, 1);
  CHECK(compare_series(prod, LaurentSeries::from_polynomial(Polynomial(std::vector<Rational>{1, 1}))).equal);
  // precision: O(u^5) times u^-2 is O(u^3)
  const LaurentSeries t = LaurentSeries::from_series(TruncatedSeries::constant(1, 4)) * LaurentSeries::monomial(1, -2);
  CHECK(t.precision() == 3);
  CHECK(t.low() == -2);
  CHECK(t.scaled_argument(2).coefficient(-2) == Rational(1, 4));
}

TEST_CASE("local solutions start with 1") {
  for (SolutionKind kind : kKinds) {
    const TaggedSolution y = make_solution(kind, pt(), kOrder);
    CHECK(y.series.coefficient(0) == 1);
    CHECK(y.scalar == 1);
    CHECK(y.effective_order() == kOrder);
  }
  const auto p = pt();
  const TaggedSolution y1 = make_solution(SolutionKind::y1, p, 3);
  CHECK(y1.series.coefficient(1) == (1 - p.a) * (1 - p.b) / ((1 - p.q) * (1 - p.c)));
}

TEST_CASE("tag ratio table against real-exponent evaluation") {
  const auto p = pt();
  const long double x = 0.37L;
  const std::vector<ShiftQuad> shifts = {{1, 0, 0, 0}, {0, 1, 0, 0},  {0, 0, 1, 0},   {0, 0, 0, 1},  {-1, 0, 0, 0},
                                         {0, 0, -1, 0}, {2, -1, 1, 0}, {1, 1, 1, -2}, {-2, 3, -1, 1}};
  for (SolutionKind kind : kKinds) {
    for (const ShiftQuad& s : shifts) {
      CAPTURE(to_string(kind));
      CAPTURE(s.to_string());
      const TagRatio r = tag_ratio(kind, p, s);
      const long double want = tag_ld(kind, p, s, x) / tag_ld(kind, p, {}, x);
      const long double got = ld(r.factor) * std::pow(x, static_cast<long double>(r.x_power));
      CHECK(std::fabs(got / want - 1) < 1e-12L);
    }
  }
}

TEST_CASE("L annihilates the four local solutions") {
  for (SolutionKind kind : kKinds) {
    const ContiguityCheck c = verify_L_annihilates(kind, pt(), kOrder);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
  // a shifted frame uses L at the shifted parameters
  const TaggedSolution y = make_solution(SolutionKind::y3, pt(), kOrder, {1, -1, 2, 1});
  const TaggedSolution r = apply_L(y);
  CHECK(r.series.valuation() >= r.series.precision());
}

TEST_CASE("eight contiguity operators on every kind") {
  for (int i = 0; i < 8; ++i) {
    for (SolutionKind kind : kKinds) {
      const ContiguityCheck c = verify_contiguity_step(static_cast<ContiguityOp>(i), kind, pt(), kOrder);
      CAPTURE(c.identity_id);
      CAPTURE(c.detail);
      CHECK(c.pass);
      CHECK(c.effective_order >= kOrder - 1);
    }
  }
}

TEST_CASE("y3, y4 scalars appear after normalization") {
  const auto p = pt();
  const TaggedSolution h1y1 = normalized(apply_contiguity(ContiguityOp::H1, make_solution(SolutionKind::y1, p, kOrder)));
  CHECK(h1y1.scalar == 1);
  CHECK(h1y1.frame.shift == ShiftQuad{1, 0, 0, 0});
  const TaggedSolution b3y2 = normalized(apply_contiguity(ContiguityOp::B3, make_solution(SolutionKind::y2, p, kOrder)));
  CHECK(b3y2.scalar == 1);
  const TaggedSolution h1y3 = normalized(apply_contiguity(ContiguityOp::H1, make_solution(SolutionKind::y3, p, kOrder)));
  CHECK(h1y3.scalar == -p.a);
  const TaggedSolution h3y4 = normalized(apply_contiguity(ContiguityOp::H3, make_solution(SolutionKind::y4, p, kOrder)));
  CHECK(h3y4.scalar == -1 / p.c);
  const TaggedSolution b2y4 = normalized(apply_contiguity(ContiguityOp::B2, make_solution(SolutionKind::y4, p, kOrder)));
  CHECK(b2y4.scalar == -p.q / p.b);
}

TEST_CASE("a wrong scalar is detected") {
  const auto p = pt();
  const TaggedSolution out = apply_contiguity(ContiguityOp::H1, make_solution(SolutionKind::y3, p, kOrder));
  const TaggedSolution want = make_solution(SolutionKind::y3, p, kOrder, {1, 0, 0, 0});
  CHECK_FALSE(compare_series(scaled(out), want.series * Rational(p.a)).equal);
  CHECK(compare_series(scaled(out), want.series * Rational(-p.a)).equal);
}

TEST_CASE("H4 is the tag step factor with a rescaled argument") {
  const auto p = pt();
  for (SolutionKind kind : kKinds) {
    const TaggedSolution y = make_solution(kind, p, kOrder);
    const TaggedSolution raw = apply_operator(contiguity_operator(ContiguityOp::H4, p), y);
    const Rational step = at_infinity(kind) ? Rational(1 / p.q) : p.q;
    CHECK(compare_series(raw.series, y.series.scaled_argument(step) * tag_step_factor(kind, p)).equal);
  }
}

TEST_CASE("H_j B_j and B_j H_j are the identity on y1") {
  for (int i = 0; i < 4; ++i) {
    const ContiguityCheck c = verify_inverse_pair(static_cast<ContiguityOp>(i), pt(), kOrder);
    CAPTURE(c.identity_id);
    CHECK(c.pass);
  }
}

TEST_CASE("Delta on local solutions") {
  for (SolutionKind kind : kKinds) {
    const ContiguityCheck c = verify_Delta_step(kind, pt(), kOrder);
    CAPTURE(c.identity_id);
    CHECK(c.pass);
  }
  // twice Delta equals the double shift, with the scalar squared for y3
  const auto p = pt();
  const TaggedSolution dd = apply_Delta(apply_Delta(make_solution(SolutionKind::y3, p, kOrder)));
  const TaggedSolution want = make_solution(SolutionKind::y3, p, kOrder, {2, 2, 2, 0});
  const Rational s1 = -p.a * p.b / p.c;
  const Rational s2 = -(p.a * p.q) * (p.b * p.q) / (p.c * p.q);
  CHECK(compare_series(scaled(dd), want.series * Rational(s1 * s2)).equal);
}

TEST_CASE("theta basics") {
  const auto p = pt();
  const TaggedSolution y = make_solution(SolutionKind::y2, p, kOrder);
  const TaggedSolution id = theta({0, 0, 0, 0}, y);
  CHECK(compare_series(scaled(id), y.series).equal);
  CHECK(theta_sequence({1, 0, 0, 0}) == std::vector<ContiguityOp>{ContiguityOp::H1});
  CHECK(theta_sequence({-1, 2, 0, -1}) ==
        std::vector<ContiguityOp>{ContiguityOp::B1, ContiguityOp::H2, ContiguityOp::H2, ContiguityOp::B4});
  const ContiguityCheck c = verify_theta_shift({1, 1, 1, 1}, SolutionKind::y1, p, kOrder);
  CHECK(c.pass);
  CHECK(theta_lambda({0, 0, 0, 0}, p) == 1);
  CHECK(theta_lambda({1, 0, 0, 0}, p) == -p.a);
  CHECK(theta_lambda({0, 0, -1, 0}, p) == -p.c / p.q);
}

TEST_CASE("theta shifts for every kind") {
  const std::vector<ShiftQuad> quads = {{1, 1, 1, 1}, {-1, 2, 0, -1}, {2, 0, -1, 1}, {0, -2, 1, 2}};
  for (const ShiftQuad& quad : quads) {
    for (SolutionKind kind : kKinds) {
      const ContiguityCheck c = verify_theta_shift(quad, kind, pt(), kOrder);
      CAPTURE(c.identity_id);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("theta does not depend on the composition order") {
  for (SolutionKind kind : kKinds) {
    const ContiguityCheck c = verify_theta_order_independence({1, -1, 1, 1}, kind, pt(), kOrder);
    CAPTURE(c.identity_id);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("three-term relation for the local solutions") {
  const std::vector<ShiftQuad> quads = {{0, 1, 0, 0}, {2, 0, 1, -1}, {1, 2, 0, 1}, {-1, 0, 1, 0}};
  for (const ShiftQuad& quad : quads) {
    for (SolutionKind kind : kKinds) {
      const ContiguityCheck c = verify_theta_relation(quad, kind, pt(), kOrder);
      CAPTURE(c.identity_id);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("reduction modulo L") {
  const auto p = pt();
  // H2 = 1 - bT = (1 - b) + b x Delta, by hand
  const OreRemainder h2 = reduce_modulo_L(contiguity_operator(ContiguityOp::H2, p), p);
  CHECK(h2.Qtilde == RationalFunction(Polynomial(std::vector<Rational>{0, p.b})));
  CHECK(h2.Rtilde == RationalFunction(Polynomial(Rational(1 - p.b))));
  // theta(1,1,1,0) reduces to Delta
  const OreRemainder top = reduce_modulo_L(theta_operator({1, 1, 1, 0}, p), p);
  CHECK(top.Qtilde == RationalFunction(Polynomial(Rational(1))));
  CHECK(top.Rtilde.is_zero());
  for (const ShiftQuad& quad : {ShiftQuad{2, 0, 1, -1}, ShiftQuad{0, 2, -1, 1}, ShiftQuad{1, -1, 2, 2}}) {
    const ContiguityCheck c = verify_ore_reduction(quad, p);
    CAPTURE(c.identity_id);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("operator composition follows T x = q x T") {
  const auto p = pt();
  const QDifferenceOperator T(p.q, {RationalFunction(), RationalFunction(Polynomial(1))});
  const QDifferenceOperator X(p.q, {RationalFunction::x_power(1)});
  const QDifferenceOperator TX = T * X;
  CHECK(TX.order() == 1);
  CHECK(TX.coefficient(1) == RationalFunction(Polynomial(std::vector<Rational>{0, p.q})));
  CHECK((X * T).coefficient(1) == RationalFunction::x_power(1));
}

TEST_CASE("Casoratians") {
  const Rational eps = parse_rational("1e-25");
  CHECK(verify_casoratian(true, pt(), kOrder, eps).pass);
  CHECK(verify_casoratian(false, pt(), kOrder, eps).pass);
  const CasoratianResult r = casoratian(true, pt(), 6, eps);
  CHECK(r.series.coefficient(0) == -(1 - pt().q / pt().c));
}

TEST_CASE("Y and Ytilde against P and Ptilde") {
  const Rational eps = parse_rational("1e-25");
  for (const ShiftQuad& quad : {ShiftQuad{1, 1, 1, 0}, ShiftQuad{0, 1, 1, -1}, ShiftQuad{-1, 2, 0, 2},
                                ShiftQuad{-2, -1, 1, 0}}) {
    const ContiguityCheck c = verify_Y_P_link(quad, pt(), kOrder, eps);
    CAPTURE(c.identity_id);
    CAPTURE(c.detail);
    CHECK(c.pass);
    const ContiguityCheck d = verify_Ptilde_product_form(quad, pt(), kOrder);
    CAPTURE(d.detail);
    CHECK(d.pass);
  }
  CHECK_THROWS_AS(verify_Y_P_link({2, 1, 0, 0}, pt(), kOrder, eps), PreconditionError);
}

TEST_CASE("lambda1 is the product of the two tag constants") {
  const auto p = pt();
  const Rational eps = parse_rational("1e-30");
  const BoundedValue l1 = lambda1(p, eps);
  CHECK(l1.error_bound < eps * 100);
  CHECK(l1.value > 0);
}

TEST_CASE("non-generic points are rejected") {
  GenericPoint p = pt();
  p.c = p.a * p.q * p.q;  // c/a = q^2
  CHECK_THROWS_AS(make_solution(SolutionKind::y1, p, 5), NonGenericError);
}
