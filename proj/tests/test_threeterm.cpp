#include <doctest.h>

#include "qhyper/threeterm.hpp"

using namespace qhyper;

namespace {

GenericPoint pt() { return default_point(); }

RationalFunction linear_x(const Rational& coeff) {
  return RationalFunction(Polynomial(std::vector<Rational>{0, coeff}));
}

}  // namespace

TEST_CASE("quad parsing and degree bound") {
  CHECK(parse_quad("-2,3,1,-1") == ShiftQuad{-2, 3, 1, -1});
  CHECK_THROWS_AS(parse_quad("1,2,3"), PreconditionError);
  CHECK_THROWS_AS(parse_quad("1,x,3,4"), PreconditionError);
  CHECK(degree_bound({1, 1, 1, 0}) == 0);
  CHECK(degree_bound({0, 0, 0, 0}) == -1);
  CHECK(degree_bound({-2, 3, 1, -1}) == 0 + 1 + 1 + 2 - 1);
}

TEST_CASE("P at (1,1,1,0) is the reciprocal of the Q prefactor") {
  const auto p = pt();
  const Polynomial P = compute_P_theorem({1, 1, 1, 0}, p);
  REQUIRE(P.degree() == 0);
  CHECK(P.coefficient(0) == -(p.q - p.c) * (1 - p.c) / ((1 - p.a) * (1 - p.b) * p.c));
}

TEST_CASE("anchor quads") {
  const auto p = pt();
  auto top = compute_QR({1, 1, 1, 0}, p);
  CHECK(top.Q == RationalFunction(Polynomial(Rational(1))));
  CHECK(top.R.is_zero());
  auto base = compute_QR({0, 0, 0, 0}, p);
  CHECK(base.Q.is_zero());
  CHECK(base.R == RationalFunction(Polynomial(Rational(1))));
}

TEST_CASE("single b shift matches the elementary contiguity") {
  // phi(a,bq;c;x) - phi(a,b;c;x) = b(1-a)x/(1-c) phi(aq,bq;cq;x), checked by hand termwise.
  const auto p = pt();
  auto qr = compute_QR({0, 1, 0, 0}, p);
  CHECK(qr.Q == linear_x(p.b * (1 - p.a) / (1 - p.c)));
  CHECK(qr.R == RationalFunction(Polynomial(Rational(1))));
  auto sw = compute_QR({1, 0, 0, 0}, p);
  CHECK(sw.swapped);
  CHECK(sw.Q == linear_x(p.a * (1 - p.b) / (1 - p.c)));
}

TEST_CASE("both closed forms of P agree") {
  const auto p = pt();
  for (ShiftQuad s : {ShiftQuad{-2, 3, 1, -1}, ShiftQuad{1, 3, 3, -2}, ShiftQuad{-3, -1, 2, -3}, ShiftQuad{2, 2, -1, 2},
                      ShiftQuad{0, 2, 3, 1}}) {
    CAPTURE(s.to_string());
    CoefficientFamilies fam(s, p);
    CHECK(compute_P_theorem(fam) == compute_P_proposition(fam));
  }
}

TEST_CASE("three-term relation holds through order 25") {
  const auto p = pt();
  for (ShiftQuad s : {ShiftQuad{2, 2, 1, 0}, ShiftQuad{-2, 3, 1, -1}, ShiftQuad{-1, 2, -2, 2}, ShiftQuad{3, -3, 3, -3},
                      ShiftQuad{-3, -1, 2, -3}, ShiftQuad{0, 0, 0, 1}}) {
    CAPTURE(s.to_string());
    auto rep = verify_three_term(s, p, 25);
    CHECK_MESSAGE(rep.pass, rep.detail);
  }
}

TEST_CASE("a wrong R is detected") {
  const auto p = pt();
  auto qr = compute_QR({0, 1, 0, 0}, p);
  auto rep = verify_relation({0, 1, 0, 0}, qr.Q, qr.R + RationalFunction(Polynomial(Rational(1, 1000))), p, 10);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_failure == 0);
}

TEST_CASE("corollary linking Q and R") {
  const auto p = pt();
  for (ShiftQuad s : {ShiftQuad{2, 3, -1, 1}, ShiftQuad{0, 1, 2, -2}, ShiftQuad{3, 1, 0, 0}}) {
    CAPTURE(s.to_string());
    auto rep = verify_corollary(s, p);
    CHECK_MESSAGE(rep.pass, rep.detail);
  }
}

TEST_CASE("relation between two arbitrary shifts") {
  const auto p = pt();
  auto g = general_three_term({2, 0, 1, -1}, {0, 2, -1, 1}, p, 20);
  CHECK_MESSAGE(g.report.pass, g.report.detail);
  CHECK_FALSE(g.Q.is_zero());
}

TEST_CASE("leading coefficient closed form") {
  const auto p = pt();
  for (ShiftQuad s : {ShiftQuad{1, 1, 1, 0}, ShiftQuad{2, 2, 1, 0}, ShiftQuad{-2, 3, 1, -1}, ShiftQuad{0, 2, 3, 1},
                      ShiftQuad{1, 3, 0, -1}}) {
    CAPTURE(s.to_string());
    const Polynomial P = compute_P_theorem(s, p);
    CHECK(P.coefficient(degree_bound(s)) == leading_coefficient(s, p));
  }
}

TEST_CASE("generating series of the coefficient families") {
  const auto p = pt();
  for (ShiftQuad s : {ShiftQuad{0, 1, 0, 0}, ShiftQuad{-1, 2, 1, -1}, ShiftQuad{1, 1, 2, -2}}) {
    CAPTURE(s.to_string());
    auto rep = verify_P_product_form(s, p, 20);
    CHECK_MESSAGE(rep.pass, rep.detail);
  }
}

TEST_CASE("vanishing thresholds") {
  const auto p = pt();
  for (ShiftQuad s : {ShiftQuad{1, 2, 0, 1}, ShiftQuad{0, 2, 1, -1}, ShiftQuad{-1, 0, 2, 1}, ShiftQuad{-2, 1, 2, -2}}) {
    CAPTURE(s.to_string());
    auto rep = verify_vanishing_thresholds(s, p, 10);
    CHECK_MESSAGE(rep.pass, rep.detail);
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("non-generic point is rejected") {
  GenericPoint bad = pt();
  bad.c = bad.a * bad.q * bad.q;
  CHECK_THROWS_AS(compute_QR({0, 1, 0, 0}, bad), NonGenericError);
}
