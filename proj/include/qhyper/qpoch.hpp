#pragma once

#include <string>
#include <vector>

#include "qhyper/bounded.hpp"
#include "qhyper/rational.hpp"

namespace qhyper {

/// q-shifted factorial (z; q)_n for any integer n.
///
/// For n >= 0 this is the product of (1 - z q^j), j < n. For n < 0 it is
/// 1 / (z q^n; q)_{-n}; a vanishing product there raises NonGenericError.
Rational qpoch(const Rational& z, long n, const Rational& q);

/// Reciprocal 1 / (z; q)_n.
///
/// For n < 0 this is the finite product (z q^n; q)_{-n}, so no division is
/// involved and the value may legitimately be zero. That gives the standard
/// conventions 1/(q; q)_n = 0 and 1/(q^{-j}; q)_j = 0 for negative n and j
/// without branching at call sites. For n >= 0 a vanishing (z; q)_n raises
/// NonGenericError.
Rational rqpoch(const Rational& z, long n, const Rational& q);

/// (z; q)_inf as a partial product over j < J plus a tail bound.
///
/// J is chosen adaptively: with S = |z| |q|^J / (1 - |q|) < 1 the tail factor
/// differs from 1 by at most S / (1 - S), so the reported bound is
/// |partial| * S / (1 - S) <= eps. The value is the exact partial product.
BoundedValue qpoch_inf(const Rational& z, const Rational& q, const Rational& eps);

/// Same quantity with the partial product kept on a 2^-448 grid, so the
/// bound also covers rounding. Much cheaper when J is large.
BoundedValue qpoch_inf_rounded(const Rational& z, const Rational& q, const Rational& eps);

// Concrete (q, a, b, c) with a finite genericity window.
struct GenericPoint {
  Rational q;
  Rational a;
  Rational b;
  Rational c;
  long window = 12;

  GenericPoint shifted(long k, long l, long m) const;
  GenericPoint swapped_ab() const { return {q, b, a, c, window}; }
};

GenericPoint default_point();

struct GenericityCheck {
  bool generic = true;
  std::vector<std::string> violations;  // e.g. "a/b = q^-2"
};

/// Scans a, b, c, a/b, c/a, c/b against {0} and {q^j : |j| <= window},
/// and 0 < |q| < 1.
GenericityCheck inspect_generic(const GenericPoint& p);
bool check_generic(const GenericPoint& p);

struct IdentityViolation {
  std::string identity;
  Rational z;
  long i = 0;
  long j = 0;
};

struct IdentitySuiteReport {
  long checked = 0;
  std::vector<IdentityViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Checks the inversion, concatenation and difference identities of the
/// q-shifted factorial on `samples` pseudo-random rationals and all index
/// pairs in [-6, 6]. Deterministic for a given seed.
IdentitySuiteReport qpoch_identity_suite(const Rational& q, int samples, unsigned seed = 20240101u);

}  // namespace qhyper
