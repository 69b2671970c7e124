#include "doctest.h"

#include "qhyper/bounded.hpp"
#include "qhyper/qpoch.hpp"

using namespace qhyper;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/7") == make_rational(3, 7));
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK(parse_rational("0.125") == make_rational(1, 8));
  CHECK(parse_rational("1e-3") == make_rational(1, 1000));
  CHECK(parse_rational("2.5E2") == make_rational(250));
  CHECK(to_string(make_rational(4)) == "4/1");
  CHECK(to_string(make_rational(-2, 6)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
  CHECK_THROWS_AS(parse_rational("abc"), PreconditionError);
}

TEST_CASE("integer powers") {
  const Rational q = make_rational(3, 7);
  CHECK(pow(q, 0) == 1);
  CHECK(pow(q, 3) == make_rational(27, 343));
  CHECK(pow(q, -2) == make_rational(49, 9));
  long t = 0;
  CHECK(is_power_of(make_rational(49, 9), q, 12, &t));
  CHECK(t == -2);
  CHECK_FALSE(is_power_of(make_rational(2, 5), q, 12, &t));
}

TEST_CASE("qpoch small cases") {
  const Rational q = make_rational(1, 3);
  const Rational z = make_rational(2, 5);
  CHECK(qpoch(z, 0, q) == 1);
  CHECK(qpoch(z, 2, q) == (1 - z) * (1 - z * q));
  CHECK(qpoch(make_rational(1, 2), -1, q) == -2);
  // z q^n = 1 makes the negative-index denominator vanish
  CHECK_THROWS_AS(qpoch(q, -1, q), NonGenericError);
}

TEST_CASE("reciprocal qpoch conventions") {
  const Rational q = make_rational(3, 7);
  for (long j = 1; j <= 5; ++j) {
    CHECK(rqpoch(q, -j, q) == 0);                     // 1/(q)_{-j}
    CHECK_FALSE(is_zero(rqpoch(pow(q, -j), j, q)));    // (q^{-j})_j is nonzero
    CHECK(rqpoch(pow(q, -j), -1, q) == qpoch(pow(q, -j - 1), 1, q));
  }
  const Rational z = make_rational(5, 11);
  for (long n = -5; n <= 5; ++n) CHECK(rqpoch(z, n, q) * qpoch(z, n, q) == 1);
}

TEST_CASE("qpoch inversion") {
  const Rational q = make_rational(2, 9);
  const Rational z = make_rational(-7, 3);
  for (long n = -6; n <= 6; ++n) CHECK(qpoch(z, n, q) * qpoch(z * pow(q, n), -n, q) == 1);
}

TEST_CASE("infinite product bounds") {
  const Rational eps = parse_rational("1e-30");
  auto zero = qpoch_inf(0, make_rational(1, 3), eps);
  CHECK(zero.value == 1);
  CHECK(zero.error_bound == 0);

  auto q0 = qpoch_inf(make_rational(3, 4), 0, eps);
  CHECK(q0.value == make_rational(1, 4));
  CHECK(q0.error_bound == 0);

  const Rational q = make_rational(1, 3);
  const Rational z = make_rational(1, 2);
  auto v = qpoch_inf(z, q, eps);
  CHECK(v.error_bound <= eps);
  CHECK(v.contains(qpoch(z, 200, q)));
  CHECK(v.contains(qpoch(z, 120, q)));

  auto neg = qpoch_inf(make_rational(-9, 2), make_rational(-4, 5), eps);
  CHECK(neg.error_bound <= eps);
  CHECK(neg.contains(qpoch(make_rational(-9, 2), 900, make_rational(-4, 5))));
  CHECK_THROWS_AS(qpoch_inf(z, 1, eps), PreconditionError);
}

TEST_CASE("bounded arithmetic encloses exact results") {
  BoundedValue x{make_rational(1, 3), make_rational(1, 1000)};
  BoundedValue y{make_rational(-2, 7), make_rational(1, 500)};
  const Rational xs[] = {make_rational(1, 3) - make_rational(1, 1000), make_rational(1, 3) + make_rational(1, 1000)};
  const Rational ys[] = {make_rational(-2, 7) - make_rational(1, 500), make_rational(-2, 7) + make_rational(1, 500)};
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      CHECK((x * y).contains(a * b));
      CHECK((x / y).contains(a / b));
      CHECK((x - y).contains(a - b));
    }
  }
  BoundedValue r = BoundedValue(pow(make_rational(1, 3), 100)).rounded(64);
  CHECK(r.contains(pow(make_rational(1, 3), 100)));
  CHECK(r.error_bound > 0);
  CHECK_THROWS_AS(x / BoundedValue(0, make_rational(1, 10)), NonGenericError);
}

TEST_CASE("genericity") {
  GenericPoint p = default_point();
  CHECK(check_generic(p));
  GenericPoint bad = p;
  bad.a = p.q * p.q;
  CHECK_FALSE(check_generic(bad));
  bad = p;
  bad.b = 0;
  CHECK_FALSE(check_generic(bad));
  bad = p;
  bad.c = p.a * pow(p.q, -5);  // c/a = q^-5
  auto report = inspect_generic(bad);
  CHECK_FALSE(report.generic);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0] == "c/a = q^-5");
  bad.window = 4;
  CHECK(check_generic(bad));
  bad = p;
  bad.q = 1;
  CHECK_FALSE(check_generic(bad));
}

TEST_CASE("qpoch identities") {
  auto report = qpoch_identity_suite(make_rational(3, 7), 6);
  CHECK(report.pass());
  CHECK(report.checked == 6 * 13 * (1 + 2 * 13));
  const Rational q = make_rational(3, 7);
  const Rational a = make_rational(2, 3);
  CHECK(qpoch(a, 5, q) == qpoch(a, 2, q) * qpoch(a * pow(q, 2), 3, q));
  // splitting at i = 4
  CHECK(qpoch(a, 4, q) == qpoch(pow(q, -3) / a, 4, q) * pow(-a, 4) * pow(q, 6));
}
