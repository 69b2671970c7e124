#pragma once

#include <string>
#include <vector>

#include "qhyper/bounded.hpp"
#include "qhyper/hypergeometric.hpp"
#include "qhyper/rational.hpp"

namespace qhyper {

/// Parameters shared by the two Gasper-type transformations and their
/// summation corollaries. n_list and c_list both have length r.
struct TransformInstance {
  long r = 0;
  long m = 0;
  long s = 0;
  std::vector<long> n_list;
  std::vector<Rational> c_list;
  Rational a;
  Rational b;
  Rational q;

  long n_sum() const;
};

struct VerificationReport {
  std::string identity_id;
  BoundedValue lhs;
  BoundedValue rhs;
  bool pass = false;
  // |lhs.value - rhs.value|; zero for exact identities.
  Rational margin;
};

/// pass iff the enclosures overlap and their combined width is at most eps.
VerificationReport make_report(std::string id, BoundedValue lhs, BoundedValue rhs, const Rational& eps);

enum class TransformKind { tf1, tf2 };

/// q = 1/3, b = 1/5, c_v from a fixed list, and a = 5/2 q^{-t} with the
/// least t >= 0 that puts every series argument at modulus <= 1/2.
TransformInstance standard_instance(TransformKind kind, long r, long m, long s, const std::vector<long>& n_list);

/// Exponent E of the worst argument a^{-1} q^E.
long tf1_argument_exponent(const TransformInstance& inst);
long tf2_argument_exponent(const TransformInstance& inst);

VerificationReport verify_tf1(const TransformInstance& inst, const Rational& eps);
VerificationReport verify_tf2(const TransformInstance& inst, const Rational& eps);

/// The original m >= 0, s = 0 formula, coded from its own display.
VerificationReport verify_gasper_original(const TransformInstance& inst, const Rational& eps);

enum class SummationKind { sf1, sf2, sf3, sf4 };
std::string to_string(SummationKind which);

/// The m is forced to 0 (sf1, sf2) or -1 (sf3, sf4); other fields are used as given.
VerificationReport verify_sf(SummationKind which, const TransformInstance& inst, const Rational& eps);

/// r+1 phi r(q^{-m}, c_v q^{n_v}; c_v; q, q) == 0 for m > sum n, exactly.
VerificationReport verify_sf15(long m, const std::vector<long>& n_list, const std::vector<Rational>& c_list,
                               const Rational& q);

/// phi_D against the r+1 phi r form with infinite-product prefactor.
VerificationReport verify_andrews(const MultiPhiDSpec& spec, const Rational& eps);

/// r+1 phi r(a, b_v; c_v; x) against the normalized multiple series.
struct AndrewsPrimeSpec {
  Rational a;
  std::vector<Rational> b;
  std::vector<Rational> c;
  Rational x;
  Rational q;
};
VerificationReport verify_andrews_prime(const AndrewsPrimeSpec& spec, const Rational& eps);

/// Normalized phi_D with b list (b, q^{-n_1}, ..., q^{-n_r}), bottom q^{m+1}
/// and arguments (x, x_1, ..., x_r).
struct ReversalSpec {
  long m = 0;
  std::vector<long> n_list;
  Rational a;
  Rational b;
  Rational x;
  std::vector<Rational> x_list;
  Rational q;
};
VerificationReport verify_reversal_lemma(const ReversalSpec& spec, const Rational& eps);
VerificationReport verify_reversal_corollary(const ReversalSpec& spec, const Rational& eps);

struct VanishingSumSpec {
  long s = 0;
  std::vector<long> n_list;
  Rational a;
  std::vector<Rational> b_list;
  Rational c;
  Rational x;
  std::vector<Rational> x_list;
  Rational q;
};
/// The finite quadruple sum, in exact arithmetic. rhs is exact 0.
VerificationReport verify_vanishing_sum_lemma(const VanishingSumSpec& spec);

}  // namespace qhyper
