#include "qhyper/transforms.hpp"

#include <algorithm>
#include <functional>

#include "qhyper/qpoch.hpp"

namespace qhyper {

long TransformInstance::n_sum() const {
  long total = 0;
  for (long n : n_list) total += n;
  return total;
}

VerificationReport make_report(std::string id, BoundedValue lhs, BoundedValue rhs, const Rational& eps) {
  VerificationReport out;
  out.identity_id = std::move(id);
  const Agreement ag = compare(lhs, rhs, eps);
  out.pass = ag.pass();
  out.margin = ag.difference;
  out.lhs = std::move(lhs);
  out.rhs = std::move(rhs);
  return out;
}

namespace {

// Pieces are evaluated far below the requested tolerance so that the
// prefactors (powers of b, large a) cannot push the combined width past it.
Rational inner_eps(const Rational& eps) { return eps / pow(Rational(10), 30); }

std::string join(const std::vector<long>& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::string instance_tag(const char* name, const TransformInstance& inst) {
  return std::string(name) + "[r=" + std::to_string(inst.r) + ",m=" + std::to_string(inst.m) +
         ",s=" + std::to_string(inst.s) + ",n=" + join(inst.n_list) + "]";
}

void check_shape(const TransformInstance& inst) {
  if (inst.r < 0 || inst.s < 0) throw PreconditionError("r and s must be non-negative");
  if (inst.n_list.size() != static_cast<size_t>(inst.r) || inst.c_list.size() != static_cast<size_t>(inst.r))
    throw PreconditionError("n_list and c_list must have length r");
  for (long n : inst.n_list)
    if (n < 0) throw PreconditionError("n_list entries must be non-negative");
  if (is_zero(inst.q) || abs(inst.q) >= 1) throw PreconditionError("need 0 < |q| < 1");
  if (is_zero(inst.a) || is_zero(inst.b)) throw NonGenericError("a and b must be nonzero");
  for (const auto& c : inst.c_list)
    if (is_zero(c)) throw NonGenericError("c_v must be nonzero");
}

void check_argument(const Rational& arg, const std::string& what) {
  if (abs(arg) >= 1) throw PreconditionError("convergence precondition violated for " + what);
}

// A bottom parameter q^{-t} makes the series undefined unless a top
// parameter stops it first.
void check_denominators(const PhiSpec& spec) {
  const auto stop = terminating_degree(spec);
  for (const auto& v : spec.denominator) {
    long t = 0;
    if (is_zero(v - 1) || (is_power_of(v, spec.q, 64, &t) && t <= 0)) {
      if (!stop || *stop >= -t) throw NonGenericError("bottom parameter " + to_string(v) + " hits a pole");
    }
  }
}

BoundedValue phi(std::vector<Rational> num, std::vector<Rational> den, const Rational& arg, const Rational& q,
                 const Rational& eps) {
  PhiSpec spec{std::move(num), std::move(den), arg, q};
  check_denominators(spec);
  return phi_value(spec, eps);
}

BoundedValue inf(const Rational& z, const Rational& q, const Rational& eps) { return qpoch_inf_rounded(z, q, eps); }

// Calls fn for every tuple 0 <= i_v <= n_v.
void for_each_tuple(const std::vector<long>& n, const std::function<void(const std::vector<long>&)>& fn) {
  std::vector<long> idx(n.size(), 0);
  while (true) {
    fn(idx);
    size_t v = 0;
    while (v < n.size() && idx[v] == n[v]) idx[v++] = 0;
    if (v == n.size()) return;
    ++idx[v];
  }
}

// sum_{k>=0} t_k with t_{k+1} = t_k ratio(k); sup(k) bounds |ratio(k')| for k' >= k.
BoundedValue ratio_series(BoundedValue first, const std::function<Rational(long)>& ratio,
                          const std::function<Rational(long)>& sup, const Rational& eps) {
  BoundedValue sum(0);
  BoundedValue term = std::move(first);
  for (long k = 0;; ++k) {
    const Rational rho = sup(k);
    if (rho < 1) {
      const Rational tail = term.magnitude_bound() / (1 - rho);
      if (tail <= eps) return {sum.value, sum.error_bound + tail};
    }
    sum = (sum + term).rounded();
    term = (term * BoundedValue(ratio(k))).rounded();
    if (k > 200000) throw PreconditionError("series evaluation did not converge");
  }
}

BoundedValue tf2_lhs(const TransformInstance& inst, bool divide_by_q_inf, const Rational& eps) {
  const Rational& q = inst.q;
  const long N = inst.n_sum();
  BoundedValue total(0);
  for (long i = 0; i <= inst.s; ++i) {
    Rational exact = qpoch(pow(q, -inst.s), i, q) * rqpoch(q, i, q) * pow(q, inst.s * i) *
                     rqpoch(pow(q, -inst.m) / inst.b, inst.m - i + 1, q);
    for (long v = 0; v < inst.r; ++v)
      exact *= qpoch(pow(q, 1 - inst.n_list[v]) / inst.c_list[v], inst.n_list[v] - i, q);
    if (is_zero(exact)) continue;
    std::vector<Rational> num{inst.a * pow(q, i), inst.b * pow(q, i)};
    std::vector<Rational> den{inst.b * pow(q, inst.m + 1)};
    for (long v = 0; v < inst.r; ++v) {
      num.push_back(inst.c_list[v] * pow(q, inst.n_list[v]));
      den.push_back(inst.c_list[v] * pow(q, i));
    }
    const Rational arg = pow(q, inst.m + 1 - N + inst.s + (inst.r - 2) * i) / inst.a;
    BoundedValue term = BoundedValue(exact) * inf(pow(q, 1 - i) / inst.a, q, eps);
    if (divide_by_q_inf) term = term / inf(q, q, eps);
    total = (total + term * phi(num, den, arg, q, eps)).rounded();
  }
  return total;
}

BoundedValue tf1_lhs(const TransformInstance& inst, const Rational& eps) {
  const Rational& q = inst.q;
  std::vector<Rational> num{inst.a, inst.b};
  std::vector<Rational> den{inst.b * pow(q, inst.m + 1)};
  for (long v = 0; v < inst.r; ++v) {
    num.push_back(inst.c_list[v] * pow(q, inst.n_list[v]));
    den.push_back(inst.c_list[v]);
  }
  return phi(num, den, pow(q, tf1_argument_exponent(inst)) / inst.a, q, eps);
}

// (q)_inf (bq/a)_inf / ((q/a)_inf (bq)_inf) prod (c_v/b)_{n_v} / (c_v)_{n_v}
BoundedValue tf1_product(const TransformInstance& inst, const Rational& eps) {
  const Rational& q = inst.q;
  Rational exact = 1;
  for (long v = 0; v < inst.r; ++v)
    exact *= qpoch(inst.c_list[v] / inst.b, inst.n_list[v], q) / qpoch(inst.c_list[v], inst.n_list[v], q);
  return BoundedValue(exact) * inf(q, q, eps) * inf(inst.b * q / inst.a, q, eps) /
         (inf(q / inst.a, q, eps) * inf(inst.b * q, q, eps));
}

void check_tf2_shape(const TransformInstance& inst) {
  for (long n : inst.n_list)
    if (n < inst.s) throw PreconditionError("the second transformation needs s <= every n_v");
}

}  // namespace

long tf1_argument_exponent(const TransformInstance& inst) { return inst.m + 1 - inst.n_sum() - inst.s; }

long tf2_argument_exponent(const TransformInstance& inst) {
  return inst.m + 1 - inst.n_sum() + inst.s + std::min(inst.r - 2, 0L) * inst.s;
}

TransformInstance standard_instance(TransformKind kind, long r, long m, long s, const std::vector<long>& n_list) {
  static const Rational cs[] = {make_rational(1, 7),  make_rational(2, 11), make_rational(3, 13),
                                make_rational(4, 17), make_rational(5, 19), make_rational(6, 23)};
  if (r < 0 || r > 6) throw PreconditionError("standard instances support 0 <= r <= 6");
  TransformInstance inst;
  inst.r = r;
  inst.m = m;
  inst.s = s;
  inst.n_list = n_list;
  inst.c_list.assign(cs, cs + r);
  inst.q = make_rational(1, 3);
  inst.b = make_rational(1, 5);
  const long E = kind == TransformKind::tf1 ? tf1_argument_exponent(inst) : tf2_argument_exponent(inst);
  const Rational base = make_rational(5, 2);
  long t = 0;
  while (abs(pow(inst.q, E + t) / base) > make_rational(1, 2)) ++t;
  inst.a = base * pow(inst.q, -t);
  return inst;
}

VerificationReport verify_tf1(const TransformInstance& inst, const Rational& eps) {
  check_shape(inst);
  const Rational& q = inst.q;
  const long N = inst.n_sum();
  check_argument(pow(q, tf1_argument_exponent(inst)) / inst.a, "the first transformation");
  const Rational in = inner_eps(eps);
  const BoundedValue lhs = tf1_lhs(inst, in);
  BoundedValue rhs(0);
  const Rational exact = qpoch(inst.b * q, inst.m, q) * rqpoch(q, inst.m, q) * pow(inst.b, N - inst.m + inst.s);
  if (!is_zero(exact)) {
    std::vector<Rational> num{pow(q, -inst.m), inst.b};
    std::vector<Rational> den{inst.b * q / inst.a};
    for (long v = 0; v < inst.r; ++v) {
      num.push_back(inst.b * q / inst.c_list[v]);
      den.push_back(inst.b * pow(q, 1 - inst.n_list[v]) / inst.c_list[v]);
    }
    rhs = (BoundedValue(exact) * tf1_product(inst, in) * phi(num, den, pow(q, 1 + inst.s), q, in)).rounded();
  }
  return make_report(instance_tag("tf1", inst), lhs, rhs, eps);
}

VerificationReport verify_gasper_original(const TransformInstance& inst, const Rational& eps) {
  check_shape(inst);
  if (inst.s != 0 || inst.m < 0) throw PreconditionError("the original formula has s = 0 and m >= 0");
  const Rational& q = inst.q;
  const long N = inst.n_sum();
  const Rational arg = pow(q, inst.m + 1 - N) / inst.a;
  check_argument(arg, "the original transformation");
  const Rational in = inner_eps(eps);
  std::vector<Rational> lnum{inst.a, inst.b}, lden{inst.b * pow(q, inst.m + 1)};
  std::vector<Rational> rnum{pow(q, -inst.m), inst.b}, rden{inst.b * q / inst.a};
  Rational exact = qpoch(inst.b * q, inst.m, q) / qpoch(q, inst.m, q) * pow(inst.b, N - inst.m);
  for (long v = 0; v < inst.r; ++v) {
    const Rational& c = inst.c_list[v];
    const long n = inst.n_list[v];
    lnum.push_back(c * pow(q, n));
    lden.push_back(c);
    rnum.push_back(inst.b * q / c);
    rden.push_back(inst.b * pow(q, 1 - n) / c);
    exact *= qpoch(c / inst.b, n, q) / qpoch(c, n, q);
  }
  const BoundedValue lhs = phi(lnum, lden, arg, q, in);
  const BoundedValue prod = inf(q, q, in) * inf(inst.b * q / inst.a, q, in) /
                            (inf(q / inst.a, q, in) * inf(inst.b * q, q, in));
  const BoundedValue rhs = (BoundedValue(exact) * prod * phi(rnum, rden, q, q, in)).rounded();
  return make_report(instance_tag("gasper", inst), lhs, rhs, eps);
}

VerificationReport verify_tf2(const TransformInstance& inst, const Rational& eps) {
  check_shape(inst);
  check_tf2_shape(inst);
  const Rational& q = inst.q;
  check_argument(pow(q, tf2_argument_exponent(inst)) / inst.a, "the second transformation");
  const Rational in = inner_eps(eps);
  const BoundedValue lhs = tf2_lhs(inst, true, in);
  BoundedValue rhs(0);
  for (long i = 0; i <= inst.s; ++i) {
    // 1/(q^{i-m})_{m-i} vanishes for i > m.
    Rational exact = rqpoch(pow(q, i - inst.m), inst.m - i, q);
    if (is_zero(exact)) continue;
    exact *= -qpoch(pow(q, -inst.s), i, q) * rqpoch(q, i, q) * pow(q, i) * pow(inst.b, 1 - inst.s);
    std::vector<Rational> num{pow(q, i - inst.m), inst.b * pow(q, i)};
    std::vector<Rational> den{inst.b * q / inst.a};
    for (long v = 0; v < inst.r; ++v) {
      const Rational shifted = inst.b * pow(q, 1 - inst.n_list[v] + i) / inst.c_list[v];
      exact *= qpoch(shifted, inst.n_list[v] - i, q);
      num.push_back(inst.b * q / inst.c_list[v]);
      den.push_back(shifted);
    }
    const BoundedValue term = BoundedValue(exact) * inf(inst.b * q / inst.a, q, in) /
                              inf(inst.b * pow(q, i), q, in) * phi(num, den, pow(q, 1 - inst.s), q, in);
    rhs = (rhs + term).rounded();
  }
  return make_report(instance_tag("tf2", inst), lhs, rhs, eps);
}

std::string to_string(SummationKind which) {
  switch (which) {
    case SummationKind::sf1: return "sf1";
    case SummationKind::sf2: return "sf2";
    case SummationKind::sf3: return "sf3";
    case SummationKind::sf4: return "sf4";
  }
  return "sf?";
}

VerificationReport verify_sf(SummationKind which, const TransformInstance& given, const Rational& eps) {
  TransformInstance inst = given;
  inst.m = (which == SummationKind::sf1 || which == SummationKind::sf2) ? 0 : -1;
  check_shape(inst);
  const Rational& q = inst.q;
  const long N = inst.n_sum();
  const Rational in = inner_eps(eps);
  const std::string id = instance_tag(to_string(which).c_str(), inst);
  switch (which) {
    case SummationKind::sf1: {
      check_argument(pow(q, 1 - N - inst.s) / inst.a, id);
      const BoundedValue rhs = (tf1_product(inst, in) * BoundedValue(pow(inst.b, N + inst.s))).rounded();
      return make_report(id, tf1_lhs(inst, in), rhs, eps);
    }
    case SummationKind::sf2: {
      check_tf2_shape(inst);
      check_argument(pow(q, tf2_argument_exponent(inst)) / inst.a, id);
      Rational exact = -pow(inst.b, 1 - inst.s);
      for (long v = 0; v < inst.r; ++v)
        exact *= qpoch(inst.b * pow(q, 1 - inst.n_list[v]) / inst.c_list[v], inst.n_list[v], q);
      const BoundedValue rhs =
          (BoundedValue(exact) * inf(inst.b * q / inst.a, q, in) / inf(inst.b, q, in)).rounded();
      return make_report(id, tf2_lhs(inst, true, in), rhs, eps);
    }
    case SummationKind::sf3: {
      const Rational arg = pow(q, -N - inst.s) / inst.a;
      check_argument(arg, id);
      std::vector<Rational> num{inst.a}, den;
      for (long v = 0; v < inst.r; ++v) {
        num.push_back(inst.c_list[v] * pow(q, inst.n_list[v]));
        den.push_back(inst.c_list[v]);
      }
      return make_report(id, phi(num, den, arg, q, in), BoundedValue(0), eps);
    }
    case SummationKind::sf4: {
      check_tf2_shape(inst);
      check_argument(pow(q, tf2_argument_exponent(inst)) / inst.a, id);
      return make_report(id, tf2_lhs(inst, false, in), BoundedValue(0), eps);
    }
  }
  throw PreconditionError("unknown summation formula");
}

VerificationReport verify_sf15(long m, const std::vector<long>& n_list, const std::vector<Rational>& c_list,
                               const Rational& q) {
  if (n_list.size() != c_list.size()) throw PreconditionError("n_list and c_list differ in length");
  long N = 0;
  for (long n : n_list) {
    if (n < 0) throw PreconditionError("n_list entries must be non-negative");
    N += n;
  }
  if (m <= N) throw PreconditionError("need m > sum of n_list");
  PhiSpec spec{{pow(q, -m)}, {}, q, q};
  for (size_t v = 0; v < n_list.size(); ++v) {
    spec.numerator.push_back(c_list[v] * pow(q, n_list[v]));
    spec.denominator.push_back(c_list[v]);
  }
  check_denominators(spec);
  return make_report("sf15[m=" + std::to_string(m) + ",n=" + join(n_list) + "]", phi_partial_sum(spec, m),
                     BoundedValue(0), 0);
}

VerificationReport verify_andrews(const MultiPhiDSpec& spec, const Rational& eps) {
  if (spec.b.size() != spec.x.size()) throw PreconditionError("b and x lists differ in length");
  const Rational& q = spec.q;
  const Rational in = inner_eps(eps);
  const BoundedValue lhs = phi_D(spec, {}, in);
  BoundedValue pre = inf(spec.a, q, in) / inf(spec.c, q, in);
  std::vector<Rational> num{spec.c / spec.a}, den;
  for (size_t v = 0; v < spec.b.size(); ++v) {
    pre = (pre * inf(spec.b[v] * spec.x[v], q, in) / inf(spec.x[v], q, in)).rounded();
    num.push_back(spec.x[v]);
    den.push_back(spec.b[v] * spec.x[v]);
  }
  const BoundedValue rhs = (pre * phi(num, den, spec.a, q, in)).rounded();
  return make_report("andrews[r=" + std::to_string(spec.b.size()) + "]", lhs, rhs, eps);
}

VerificationReport verify_andrews_prime(const AndrewsPrimeSpec& spec, const Rational& eps) {
  if (spec.b.size() != spec.c.size()) throw PreconditionError("b and c lists differ in length");
  const Rational& q = spec.q;
  const Rational in = inner_eps(eps);
  std::vector<Rational> num{spec.a};
  num.insert(num.end(), spec.b.begin(), spec.b.end());
  const BoundedValue lhs = phi(num, spec.c, spec.x, q, in);
  MultiPhiDSpec tilde{spec.x, {}, spec.a * spec.x, spec.b, q};
  BoundedValue pre(1);
  for (size_t v = 0; v < spec.b.size(); ++v) {
    tilde.b.push_back(spec.c[v] / spec.b[v]);
    pre = (pre * inf(spec.b[v], q, in) / inf(spec.c[v], q, in)).rounded();
  }
  const BoundedValue rhs = (pre * phi_D_tilde(tilde, {}, in)).rounded();
  return make_report("andrews_prime[r=" + std::to_string(spec.b.size()) + "]", lhs, rhs, eps);
}

namespace {

void check_reversal(const ReversalSpec& spec) {
  if (spec.n_list.size() != spec.x_list.size()) throw PreconditionError("n_list and x_list differ in length");
  for (long n : spec.n_list)
    if (n < 0) throw PreconditionError("n_list entries must be non-negative");
  if (abs(spec.x) >= 1) throw PreconditionError("need |x| < 1");
  if (is_zero(spec.x)) throw PreconditionError("x must be nonzero");
  for (const auto& xv : spec.x_list)
    if (is_zero(xv)) throw PreconditionError("x_v must be nonzero");
  if (is_zero(spec.a) || is_power_of(spec.a, spec.q, 256, nullptr)) throw NonGenericError("a must avoid q^Z");
}

BoundedValue reversal_lhs(const ReversalSpec& spec, const Rational& eps) {
  const Rational& q = spec.q;
  MultiPhiDSpec d{spec.a, {spec.b}, pow(q, spec.m + 1), {spec.x}, q};
  for (size_t v = 0; v < spec.n_list.size(); ++v) {
    d.b.push_back(pow(q, -spec.n_list[v]));
    d.x.push_back(spec.x_list[v]);
  }
  return phi_D_tilde(d, {}, eps);
}

// (-1)^N q^{-sum n(n+1)/2} x^{-m-N} prod x_v^{n_v}
Rational reversal_prefactor(const ReversalSpec& spec) {
  long N = 0, tri = 0;
  Rational out = 1;
  for (size_t v = 0; v < spec.n_list.size(); ++v) {
    N += spec.n_list[v];
    tri += spec.n_list[v] * (spec.n_list[v] + 1) / 2;
    out *= pow(spec.x_list[v], spec.n_list[v]);
  }
  return out * ((N % 2) ? -1 : 1) * pow(spec.q, -tri) * pow(spec.x, -spec.m - N);
}

std::string reversal_tag(const char* name, const ReversalSpec& spec) {
  return std::string(name) + "[m=" + std::to_string(spec.m) + ",n=" + join(spec.n_list) + "]";
}

}  // namespace

VerificationReport verify_reversal_lemma(const ReversalSpec& spec, const Rational& eps) {
  check_reversal(spec);
  const Rational& q = spec.q;
  const Rational in = inner_eps(eps);
  const Rational aq = abs(q), ax = abs(spec.x), ab = abs(spec.b), aa = abs(spec.a);
  long N = 0;
  for (long n : spec.n_list) N += n;
  BoundedValue total(0);
  for_each_tuple(spec.n_list, [&](const std::vector<long>& idx) {
    Rational weight = 1;
    long isum = 0;
    for (size_t v = 0; v < idx.size(); ++v) {
      const long n = spec.n_list[v], i = idx[v];
      isum += i;
      weight *= qpoch(pow(q, -n), i, q) * rqpoch(q, i, q) * pow(spec.x * pow(q, n + 1) / spec.x_list[v], i);
    }
    if (is_zero(weight)) return;
    const long I = spec.m + N - isum;
    const long j0 = std::max(0L, I);
    const long t0 = j0 - I;
    // term at j = j0 + k, without the constant (q)_inf / (a q^{j0-m})_inf
    const Rational first = qpoch(spec.b, t0, q) * rqpoch(q, t0, q) * rqpoch(q, j0, q) * pow(spec.x, j0);
    auto ratio = [&](long k) -> Rational {
      const long j = j0 + k, t = t0 + k;
      return (1 - spec.b * pow(q, t)) * (1 - spec.a * pow(q, j - spec.m)) * spec.x /
             ((1 - pow(q, t + 1)) * (1 - pow(q, j + 1)));
    };
    auto sup = [&](long k) -> Rational {
      const long j = j0 + k, t = t0 + k;
      return ax * (1 + ab * pow(aq, t)) * (1 + aa * pow(aq, j - spec.m)) /
             ((1 - pow(aq, t + 1)) * (1 - pow(aq, j + 1)));
    };
    const BoundedValue inner = ratio_series(BoundedValue(first), ratio, sup, in);
    const BoundedValue constant = inf(q, q, in) / inf(spec.a * pow(q, j0 - spec.m), q, in);
    total = (total + BoundedValue(weight) * constant * inner).rounded();
  });
  const BoundedValue rhs = (BoundedValue(reversal_prefactor(spec)) * total).rounded();
  return make_report(reversal_tag("reversal", spec), reversal_lhs(spec, in), rhs, eps);
}

VerificationReport verify_reversal_corollary(const ReversalSpec& spec, const Rational& eps) {
  check_reversal(spec);
  const Rational& q = spec.q;
  long N = 0;
  for (long n : spec.n_list) N += n;
  if (is_zero(qpoch(spec.b * pow(q, -spec.m - N), spec.m + N, q)))
    throw NonGenericError("(b q^{-m-N})_{m+N} vanishes");
  const Rational in = inner_eps(eps);
  MultiPhiDSpec d{spec.b * pow(q, -spec.m - N), {spec.a * pow(q, -spec.m)}, pow(q, 1 - spec.m - N), {spec.x}, q};
  for (size_t v = 0; v < spec.n_list.size(); ++v) {
    d.b.push_back(pow(q, -spec.n_list[v]));
    d.x.push_back(spec.x * pow(q, spec.n_list[v] + 1) / spec.x_list[v]);
  }
  const BoundedValue pre = inf(spec.b, q, in) / inf(spec.a * pow(q, -spec.m), q, in);
  const BoundedValue rhs = (pre * BoundedValue(reversal_prefactor(spec)) * phi_D_tilde(d, {}, in)).rounded();
  return make_report(reversal_tag("reversal_corollary", spec), reversal_lhs(spec, in), rhs, eps);
}

VerificationReport verify_vanishing_sum_lemma(const VanishingSumSpec& spec) {
  const size_t r = spec.n_list.size();
  if (spec.b_list.size() != r || spec.x_list.size() != r) throw PreconditionError("list lengths differ");
  if (spec.s < 0) throw PreconditionError("s must be non-negative");
  for (long n : spec.n_list)
    if (n < 0) throw PreconditionError("n_list entries must be non-negative");
  const Rational& q = spec.q;
  const long s = spec.s;
  Rational total = 0;
  for (long i = 0; i <= s; ++i) {
    const Rational outer = qpoch(pow(q, -s), i, q) * rqpoch(q, i, q) * pow(q, i);
    const Rational ci = spec.c * pow(q, i);
    for_each_tuple(spec.n_list, [&](const std::vector<long>& idx) {
      long I = 0;
      Rational base = outer;
      for (size_t v = 0; v < r; ++v) {
        I += idx[v];
        base *= qpoch(spec.b_list[v] * pow(q, i), idx[v], q) * rqpoch(q, idx[v], q) * pow(spec.x_list[v], idx[v]);
      }
      for (long j = 0; j <= s - 1 - I; ++j) {
        total += base * qpoch(pow(q, 1 - s), I + j, q) * qpoch(spec.a * pow(q, -i), j, q) *
                 rqpoch(ci, 1 - s + I + j, q) * rqpoch(q, j, q) * pow(spec.x * pow(q, i), j);
      }
    });
  }
  return make_report("vanishing_sum[s=" + std::to_string(s) + ",n=" + join(spec.n_list) + "]", total,
                     BoundedValue(0), 0);
}

}  // namespace qhyper
