#include <doctest.h>

#include <cmath>

#include "qhyper/qpoch.hpp"
#include "qhyper/transforms.hpp"

using namespace qhyper;

namespace {

const Rational kEps = pow(Rational(10), -25);

Rational r(long n, long d) { return make_rational(n, d); }

#define CHECK_REPORT(rep)                                                   \
  do {                                                                      \
    const auto& rep_ = (rep);                                               \
    CAPTURE(rep_.identity_id);                                              \
    CAPTURE(rep_.margin.get_d());                                           \
    CHECK(rep_.pass);                                                       \
  } while (0)

// Plain floating-point summation, independent of the certified evaluator.
long double naive_q_gauss_lhs(long double a, long double b, long double q) {
  long double sum = 0, term = 1;
  for (int i = 0; i < 400; ++i) {
    sum += term;
    term *= (1 - a * std::pow(q, i)) * (1 - b * std::pow(q, i)) / ((1 - std::pow(q, i + 1)) * (1 - b * std::pow(q, i + 1))) * (q / a);
  }
  return sum;
}

long double naive_inf(long double z, long double q) {
  long double p = 1;
  for (int i = 0; i < 400; ++i) p *= 1 - z * std::pow(q, i);
  return p;
}

}  // namespace

TEST_CASE("report rule") {
  auto ok = make_report("x", BoundedValue(r(1, 2), r(1, 100)), BoundedValue(r(51, 100)), r(1, 10));
  CHECK(ok.pass);
  CHECK(ok.margin == r(1, 100));
  auto apart = make_report("x", BoundedValue(r(1, 2), r(1, 1000)), BoundedValue(r(51, 100)), r(1, 10));
  CHECK_FALSE(apart.pass);
  auto wide = make_report("x", BoundedValue(r(1, 2), r(1, 2)), BoundedValue(r(1, 2)), r(1, 10));
  CHECK_FALSE(wide.pass);
}

TEST_CASE("standard instances keep the argument small") {
  auto inst = standard_instance(TransformKind::tf1, 1, 1, 0, {1});
  CHECK(inst.a == r(5, 2));
  auto far = standard_instance(TransformKind::tf1, 2, -3, 3, {3, 3});
  CHECK(abs(pow(far.q, tf1_argument_exponent(far)) / far.a) <= r(1, 2));
  auto t2 = standard_instance(TransformKind::tf2, 1, 0, 2, {3});
  CHECK(tf2_argument_exponent(t2) == 0 + 1 - 3 + 2 - 2);
}

TEST_CASE("first transformation") {
  CHECK_REPORT(verify_tf1(standard_instance(TransformKind::tf1, 1, 1, 0, {1}), kEps));
  CHECK_REPORT(verify_tf1(standard_instance(TransformKind::tf1, 1, 0, 0, {2}), kEps));
  CHECK_REPORT(verify_tf1(standard_instance(TransformKind::tf1, 2, 0, 0, {0, 0}), kEps));
  CHECK_REPORT(verify_tf1(standard_instance(TransformKind::tf1, 2, -2, 1, {1, 2}), kEps));
  CHECK_REPORT(verify_tf1(standard_instance(TransformKind::tf1, 2, 3, 2, {0, 3}), kEps));
}

TEST_CASE("first transformation at s = 0 matches the original display") {
  for (long m : {0L, 1L, 3L}) {
    auto inst = standard_instance(TransformKind::tf1, 2, m, 0, {1, 2});
    auto a = verify_tf1(inst, kEps);
    auto b = verify_gasper_original(inst, kEps);
    CHECK_REPORT(b);
    CHECK(a.lhs.value == b.lhs.value);
    CHECK(a.rhs.overlaps(b.rhs));
  }
}

TEST_CASE("convergence precondition is enforced") {
  auto inst = standard_instance(TransformKind::tf1, 1, 1, 0, {1});
  inst.a = r(1, 10);
  CHECK_THROWS_AS(verify_tf1(inst, kEps), PreconditionError);
  auto bad = standard_instance(TransformKind::tf2, 1, 1, 2, {1});
  CHECK_THROWS_AS(verify_tf2(bad, kEps), PreconditionError);
}

TEST_CASE("second transformation") {
  CHECK_REPORT(verify_tf2(standard_instance(TransformKind::tf2, 2, 2, 1, {1, 1}), kEps));
  CHECK_REPORT(verify_tf2(standard_instance(TransformKind::tf2, 1, 0, 2, {3}), kEps));
  CHECK_REPORT(verify_tf2(standard_instance(TransformKind::tf2, 2, -1, 2, {2, 3}), kEps));
  CHECK_REPORT(verify_tf2(standard_instance(TransformKind::tf2, 0, 3, 3, {}), kEps));
}

TEST_CASE("second transformation at s = 0 is the first up to explicit factors") {
  auto inst = standard_instance(TransformKind::tf2, 1, 2, 0, {2});
  auto one = verify_tf1(inst, kEps);
  auto two = verify_tf2(inst, kEps);
  CHECK_REPORT(two);
  const Rational& q = inst.q;
  const Rational eps = pow(Rational(10), -60);
  BoundedValue factor = qpoch_inf(q / inst.a, q, eps) / qpoch_inf(q, q, eps) *
                        BoundedValue(rqpoch(pow(q, -inst.m) / inst.b, inst.m + 1, q) *
                                     qpoch(pow(q, 1 - inst.n_list[0]) / inst.c_list[0], inst.n_list[0], q));
  CHECK(compare(one.lhs * factor, two.lhs, kEps).pass());
}

TEST_CASE("terms beyond m on the right of the second transformation are exact zeros") {
  const Rational q = r(1, 3);
  for (long m = -2; m <= 2; ++m)
    for (long i = m + 1; i <= m + 4; ++i) CHECK(is_zero(rqpoch(pow(q, i - m), m - i, q)));
}

TEST_CASE("summation formulas") {
  // each instance is built with the m its formula fixes
  CHECK_REPORT(verify_sf(SummationKind::sf1, standard_instance(TransformKind::tf1, 2, 0, 1, {1, 2}), kEps));
  CHECK_REPORT(verify_sf(SummationKind::sf1, standard_instance(TransformKind::tf1, 1, 0, 0, {0}), kEps));
  CHECK_REPORT(verify_sf(SummationKind::sf3, standard_instance(TransformKind::tf1, 2, -1, 1, {1, 2}), kEps));
  CHECK_REPORT(verify_sf(SummationKind::sf3, standard_instance(TransformKind::tf1, 1, -1, 0, {0}), kEps));
  CHECK_REPORT(verify_sf(SummationKind::sf2, standard_instance(TransformKind::tf2, 2, 0, 1, {1, 2}), kEps));
  CHECK_REPORT(verify_sf(SummationKind::sf2, standard_instance(TransformKind::tf2, 1, 0, 0, {2}), kEps));
  CHECK_REPORT(verify_sf(SummationKind::sf4, standard_instance(TransformKind::tf2, 2, -1, 1, {1, 2}), kEps));
  CHECK_REPORT(verify_sf(SummationKind::sf4, standard_instance(TransformKind::tf2, 1, -1, 0, {2}), kEps));
}

TEST_CASE("sf1 and sf2 at s = 0 are the same identity") {
  auto inst = standard_instance(TransformKind::tf1, 1, 0, 0, {2});
  auto one = verify_sf(SummationKind::sf1, inst, kEps);
  auto two = verify_sf(SummationKind::sf2, inst, kEps);
  CHECK_REPORT(one);
  CHECK_REPORT(two);
  // sf2 at s = 0 carries (q/a)_inf (q^{1-n}/c)_n / ((q)_inf (1/b)_1) in front of the same series
  const Rational eps = pow(Rational(10), -60);
  const Rational& q = inst.q;
  const Rational finite = qpoch(pow(q, -1) / inst.c_list[0], 2, q) / (1 - 1 / inst.b);
  const BoundedValue scale =
      qpoch_inf(q / inst.a, q, eps) / qpoch_inf(q, q, eps) * BoundedValue(finite);
  CHECK(compare(one.lhs * scale, two.lhs, kEps).pass());
}

TEST_CASE("sf1 with r = 0 against a floating-point sum") {
  auto inst = standard_instance(TransformKind::tf1, 0, 0, 0, {});
  auto rep = verify_sf(SummationKind::sf1, inst, kEps);
  CHECK_REPORT(rep);
  const long double a = inst.a.get_d(), b = inst.b.get_d(), q = inst.q.get_d();
  const long double rhs = naive_inf(q, q) * naive_inf(b * q / a, q) / (naive_inf(q / a, q) * naive_inf(b * q, q));
  CHECK(std::fabs(static_cast<double>(naive_q_gauss_lhs(a, b, q) - rhs)) < 1e-14);
  CHECK(std::fabs(rep.lhs.value.get_d() - static_cast<double>(rhs)) < 1e-14);
}

TEST_CASE("sf3 becomes a terminating exact zero") {
  auto inst = standard_instance(TransformKind::tf1, 2, -1, 1, {1, 2});
  inst.a = pow(inst.q, -inst.n_sum() - inst.s - 1);
  auto rep = verify_sf(SummationKind::sf3, inst, kEps);
  CHECK(rep.pass);
  CHECK(rep.lhs.exact());
  CHECK(is_zero(rep.lhs.value));
}

TEST_CASE("finite vanishing sum") {
  const Rational q = r(1, 3);
  // 1 + (1 - q^{-1}) q / (1 - q) = 0 by hand
  CHECK(is_zero(1 + (1 - 1 / q) * q / (1 - q)));
  auto one = verify_sf15(1, {0}, {r(1, 7)}, q);
  CHECK(one.pass);
  CHECK(is_zero(one.margin));
  CHECK(verify_sf15(3, {1, 1}, {r(1, 7), r(2, 11)}, q).pass);
  CHECK(verify_sf15(3, {2}, {r(3, 13)}, q).pass);
  CHECK_THROWS_AS(verify_sf15(2, {2}, {r(3, 13)}, q), PreconditionError);
  // with m equal to the sum the series is a nonzero product
  PhiSpec spec{{pow(q, -2), r(3, 13) * pow(q, 2)}, {r(3, 13)}, q, q};
  CHECK_FALSE(is_zero(phi_partial_sum(spec, 2)));
}

TEST_CASE("Andrews formula") {
  const Rational q = r(1, 3);
  CHECK_REPORT(verify_andrews({r(1, 4), {r(2, 5)}, r(3, 7), {r(1, 2)}, q}, kEps));
  CHECK_REPORT(verify_andrews({r(-1, 5), {r(2, 5), r(5, 3)}, r(3, 7), {r(1, 2), r(-1, 3)}, q}, kEps));
  auto same = verify_andrews({r(2, 7), {r(2, 5), r(1, 6)}, r(2, 7), {r(1, 2), r(1, 5)}, q}, kEps);
  CHECK_REPORT(same);
  auto zero = verify_andrews({r(1, 4), {r(2, 5), r(3, 5)}, r(3, 7), {0, 0}, q}, kEps);
  CHECK_REPORT(zero);
  CHECK(zero.lhs.contains(1));
  CHECK(zero.rhs.contains(1));
}

TEST_CASE("rewritten Andrews formula") {
  const Rational q = r(1, 3);
  CHECK_REPORT(verify_andrews_prime({r(2, 3), {r(1, 4)}, {r(5, 7)}, r(1, 2), q}, kEps));
  CHECK_REPORT(verify_andrews_prime({r(-3, 2), {r(1, 4), r(-2, 5)}, {r(5, 7), r(1, 9)}, r(1, 3), q}, kEps));
}

TEST_CASE("reversal identity and its special case") {
  const Rational q = r(1, 3);
  CHECK_REPORT(verify_reversal_lemma({0, {0}, r(2, 7), r(3, 5), r(1, 4), {r(1, 2)}, q}, kEps));
  CHECK_REPORT(verify_reversal_lemma({-1, {2}, r(2, 7), r(3, 5), r(1, 4), {r(1, 2)}, q}, kEps));
  CHECK_REPORT(verify_reversal_lemma({2, {1, 2}, r(5, 2), r(-3, 5), r(2, 5), {r(1, 2), r(-2, 3)}, q}, kEps));
  CHECK_REPORT(verify_reversal_corollary({1, {1}, r(2, 7), r(3, 5), r(1, 4), {r(1, 2)}, q}, kEps));
  CHECK_REPORT(verify_reversal_corollary({-3, {1, 1}, r(2, 7), r(3, 5), r(1, 4), {r(1, 2), r(3, 4)}, q}, kEps));
  CHECK_THROWS_AS(verify_reversal_lemma({0, {0}, pow(q, 2), r(3, 5), r(1, 4), {r(1, 2)}, q}, kEps),
                  NonGenericError);
}

TEST_CASE("vanishing sum") {
  const Rational q = r(1, 3);
  auto empty = verify_vanishing_sum_lemma({0, {1}, r(2, 7), {r(3, 5)}, r(4, 11), r(1, 4), {r(1, 2)}, q});
  CHECK(empty.pass);
  CHECK(is_zero(empty.lhs.value));
  CHECK(verify_vanishing_sum_lemma({1, {1}, r(2, 7), {r(3, 5)}, r(4, 11), r(1, 4), {r(1, 2)}, q}).pass);
  CHECK(verify_vanishing_sum_lemma({2, {1, 2}, r(2, 7), {r(3, 5), r(-1, 6)}, r(4, 11), r(1, 4), {r(1, 2), r(5, 3)}, q})
            .pass);
  CHECK(verify_vanishing_sum_lemma({4, {0, 3, 1}, r(9, 7), {r(3, 5), r(-1, 6), r(2, 3)}, r(4, 11), r(-7, 4),
                                    {r(1, 2), r(5, 3), r(2, 9)}, q})
            .pass);
}
