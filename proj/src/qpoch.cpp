#include "qhyper/qpoch.hpp"

#include <random>

namespace qhyper {

namespace {

Rational finite_product(const Rational& z, long count, const Rational& q) {
  Rational result = 1;
  Rational term = z;
  for (long j = 0; j < count; ++j) {
    result *= 1 - term;
    term *= q;
  }
  return result;
}

}  // namespace

Rational qpoch(const Rational& z, long n, const Rational& q) {
  if (n >= 0) return finite_product(z, n, q);
  const Rational den = finite_product(z * pow(q, n), -n, q);
  if (is_zero(den)) throw NonGenericError("(z;q)_n with n < 0 has a vanishing denominator");
  return 1 / den;
}

Rational rqpoch(const Rational& z, long n, const Rational& q) {
  if (n < 0) return finite_product(z * pow(q, n), -n, q);
  const Rational den = finite_product(z, n, q);
  if (is_zero(den)) throw NonGenericError("reciprocal of a vanishing q-shifted factorial");
  return 1 / den;
}

BoundedValue qpoch_inf(const Rational& z, const Rational& q, const Rational& eps) {
  if (abs(q) >= 1) throw PreconditionError("qpoch_inf needs |q| < 1");
  if (eps <= 0) throw PreconditionError("qpoch_inf needs eps > 0");
  const Rational az = abs(z);
  const Rational aq = abs(q);
  Rational partial = 1;
  Rational term = z;      // z q^J
  Rational tail = az / (1 - aq);  // |z| |q|^J / (1 - |q|)
  for (long J = 0;; ++J) {
    if (is_zero(tail)) return {partial, 0};
    if (tail < 1) {
      Rational bound = abs(partial) * tail / (1 - tail);
      if (bound <= eps) return {partial, bound};
    }
    partial *= 1 - term;
    term *= q;
    tail *= aq;
    if (J > 1000000) throw PreconditionError("qpoch_inf did not converge");
  }
}

BoundedValue qpoch_inf_rounded(const Rational& z, const Rational& q, const Rational& eps) {
  if (abs(q) >= 1) throw PreconditionError("qpoch_inf needs |q| < 1");
  if (eps <= 0) throw PreconditionError("qpoch_inf needs eps > 0");
  const Rational aq = abs(q);
  BoundedValue partial(1);
  Rational term = z;
  Rational tail = abs(z) / (1 - aq);
  for (long J = 0;; ++J) {
    if (is_zero(tail)) return partial;
    if (tail < 1) {
      BoundedValue factor(1, tail / (1 - tail));
      BoundedValue full = (partial * factor).rounded();
      if (full.error_bound <= eps) return full;
    }
    partial = (partial * BoundedValue(1 - term)).rounded();
    term *= q;
    tail *= aq;
    if (J > 1000000) throw PreconditionError("qpoch_inf did not converge");
  }
}

GenericPoint GenericPoint::shifted(long k, long l, long m) const {
  return {q, a * pow(q, k), b * pow(q, l), c * pow(q, m), window};
}

GenericPoint default_point() {
  return {make_rational(3, 7), make_rational(2, 5), make_rational(3, 11), make_rational(5, 13), 12};
}

GenericityCheck inspect_generic(const GenericPoint& p) {
  GenericityCheck out;
  if (is_zero(p.q) || abs(p.q) >= 1) {
    out.generic = false;
    out.violations.push_back("q must satisfy 0 < |q| < 1");
    return out;
  }
  const struct {
    const char* name;
    Rational value;
  } quantities[] = {
      {"a", p.a}, {"b", p.b}, {"c", p.c}, {"a/b", 0}, {"c/a", 0}, {"c/b", 0},
  };
  auto check = [&](const char* name, const Rational& v) {
    if (is_zero(v)) {
      out.generic = false;
      out.violations.push_back(std::string(name) + " = 0");
      return;
    }
    long t = 0;
    if (is_power_of(v, p.q, p.window, &t)) {
      out.generic = false;
      out.violations.push_back(std::string(name) + " = q^" + std::to_string(t));
    }
  };
  check(quantities[0].name, p.a);
  check(quantities[1].name, p.b);
  check(quantities[2].name, p.c);
  if (is_zero(p.a) || is_zero(p.b)) return out;
  check("a/b", p.a / p.b);
  check("c/a", p.c / p.a);
  check("c/b", p.c / p.b);
  return out;
}

bool check_generic(const GenericPoint& p) { return inspect_generic(p).generic; }

IdentitySuiteReport qpoch_identity_suite(const Rational& q, int samples, unsigned seed) {
  if (samples <= 0) throw PreconditionError("samples must be positive");
  IdentitySuiteReport report;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 41);
  for (int s = 0; s < samples; ++s) {
    Rational z;
    do {
      z = make_rational(num(rng), den(rng));
    } while (is_zero(z) || is_power_of(z, q, 64, nullptr));
    for (long i = -6; i <= 6; ++i) {
      // (z)_i = (z^{-1} q^{1-i})_i (-z)^i q^{i(i-1)/2}
      const Rational inverted = qpoch(1 / z * pow(q, 1 - i), i, q) * pow(-z, i) * pow(q, i * (i - 1) / 2);
      ++report.checked;
      if (qpoch(z, i, q) != inverted) report.violations.push_back({"inversion", z, i, 0});
      for (long j = -6; j <= 6; ++j) {
        // (z)_{i+j} = (z)_i (z q^i)_j
        ++report.checked;
        if (qpoch(z, i + j, q) != qpoch(z, i, q) * qpoch(z * pow(q, i), j, q)) {
          report.violations.push_back({"concatenation", z, i, j});
        }
        // (z)_{i-j} = (z)_i / (z^{-1} q^{1-i})_j (-1/z)^j q^{j(j+1)/2 - ij}
        ++report.checked;
        const Rational diff = qpoch(z, i, q) * rqpoch(1 / z * pow(q, 1 - i), j, q) * pow(-1 / z, j) *
                              pow(q, j * (j + 1) / 2 - i * j);
        if (qpoch(z, i - j, q) != diff) report.violations.push_back({"difference", z, i, j});
      }
    }
  }
  return report;
}

}  // namespace qhyper
