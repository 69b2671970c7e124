#include "qhyper/hypergeometric.hpp"

#include <algorithm>
#include <functional>

#include "qhyper/polynomial.hpp"
#include "qhyper/qpoch.hpp"

namespace qhyper {

namespace {

// Ratio t_{i+1} / t_i of an r+1 phi r series.
Rational term_ratio(const PhiSpec& spec, long i, const Rational& qi) {
  Rational num = spec.argument;
  for (const auto& u : spec.numerator) num *= 1 - u * qi;
  Rational den = 1 - qi * spec.q;
  for (const auto& v : spec.denominator) den *= 1 - v * qi;
  if (is_zero(den)) {
    throw NonGenericError("denominator parameter hits q^{-" + std::to_string(i) + "}");
  }
  return num / den;
}

}  // namespace

TruncatedSeries phi_series_in_x(const PhiSpec& spec, long order) {
  std::vector<Rational> v(static_cast<size_t>(order + 1));
  Rational t = 1;
  Rational qi = 1;
  for (long i = 0; i <= order; ++i) {
    v[static_cast<size_t>(i)] = t;
    if (i < order) {
      if (!is_zero(t)) t *= term_ratio(spec, i, qi);
      qi *= spec.q;
    }
  }
  return {order, std::move(v)};
}

std::optional<long> terminating_degree(const PhiSpec& spec, long window) {
  std::optional<long> best;
  for (const auto& u : spec.numerator) {
    long t = 0;
    if (u == 1) {
      t = 0;
    } else if (!is_power_of(u, spec.q, window, &t) || t > 0) {
      continue;
    }
    if (!best || -t < *best) best = -t;
  }
  return best;
}

Rational phi_partial_sum(const PhiSpec& spec, long last) {
  Rational sum = 0;
  Rational t = 1;
  Rational qi = 1;
  for (long i = 0; i <= last; ++i) {
    sum += t;
    if (i == last) break;
    t *= term_ratio(spec, i, qi);
    if (is_zero(t)) break;
    qi *= spec.q;
  }
  return sum;
}

BoundedValue phi_value(const PhiSpec& spec, const Rational& eps) {
  if (auto j = terminating_degree(spec)) return phi_partial_sum(spec, *j);
  if (is_zero(spec.argument)) return Rational(1);
  const Rational az = abs(spec.argument);
  if (az >= 1) throw PreconditionError("non-terminating series needs |argument| < 1");
  const Rational aq = abs(spec.q);
  BoundedValue sum(0);
  BoundedValue term(1);
  Rational qi = 1;   // q^i
  Rational aqi = 1;  // |q|^i
  for (long i = 0;; ++i) {
    // Worst-case term ratio for all indices >= i.
    Rational num = az;
    for (const auto& u : spec.numerator) num *= 1 + abs(u) * aqi;
    Rational den = 1 - aqi * aq;
    bool usable = den > 0;
    for (const auto& v : spec.denominator) {
      den *= 1 - abs(v) * aqi;
      usable = usable && (1 - abs(v) * aqi) > 0;
    }
    if (usable && num < den) {
      const Rational rho = num / den;
      const Rational tail = term.magnitude_bound() / (1 - rho);
      if (tail <= eps) return {sum.value, sum.error_bound + tail};
    }
    sum = (sum + term).rounded();
    term = (term * BoundedValue(term_ratio(spec, i, qi))).rounded();
    qi *= spec.q;
    aqi *= aq;
    if (i > 200000) throw PreconditionError("series evaluation did not converge");
  }
}

Rational phi4_3_terminating(long j, const std::array<Rational, 3>& b, const std::array<Rational, 3>& c,
                            const Rational& arg, const Rational& q) {
  if (j < 0) throw PreconditionError("terminating 4phi3 needs j >= 0");
  PhiSpec spec{{pow(q, -j), b[0], b[1], b[2]}, {c[0], c[1], c[2]}, arg, q};
  return phi_partial_sum(spec, j);
}

PhiTilde phi_tilde_2_1(const Rational& a, const Rational& b, const Rational& c, const Rational& q, long order,
                       const Rational& eps) {
  const Rational inner = eps / 64;
  BoundedValue num = qpoch_inf_rounded(q, q, inner) * qpoch_inf_rounded(c, q, inner);
  BoundedValue den = qpoch_inf_rounded(a, q, inner) * qpoch_inf_rounded(b, q, inner);
  PhiTilde out;
  out.scalar = (num / den).rounded();
  out.series = phi_series_in_x({{a, b}, {c}, 1, q}, order);
  return out;
}

namespace {

// Shared machinery for phi_D and its normalized variant. The multiple sum
// is  sum_i W(|i|) prod_v g_v(i_v)  with W given by a start index, a start
// value and the ratio (1 - A q^n) / (1 - C q^n).
class MultiSum {
 public:
  MultiSum(const MultiPhiDSpec& spec, long w_start, BoundedValue w0)
      : spec_(spec), w_start_(w_start), w0_(std::move(w0)) {
    if (spec.b.size() != spec.x.size()) throw PreconditionError("b and x lists differ in length");
    w_.push_back(w_start_ == 0 ? w0_ : BoundedValue(0));
    g_.resize(spec.b.size());
    stop_.resize(spec.b.size());
    for (size_t v = 0; v < spec.b.size(); ++v) {
      g_[v].push_back(BoundedValue(1));
      long t = 0;
      if (spec.b[v] == 1) {
        stop_[v] = 0;
      } else if (is_power_of(spec.b[v], spec.q, 64, &t) && t < 0) {
        stop_[v] = -t;
      } else if (is_zero(spec.x[v])) {
        stop_[v] = 0;
      } else {
        stop_[v] = -1;
        if (abs(spec.x[v]) >= 1) throw PreconditionError("non-terminating index needs |x| < 1");
      }
    }
  }

  BoundedValue evaluate(std::vector<long> caps, const Rational& eps) {
    const size_t r = spec_.b.size();
    if (caps.empty()) {
      caps.assign(r, 0);
      for (size_t v = 0; v < r; ++v) caps[v] = stop_[v] >= 0 ? stop_[v] : 8;
      for (int iter = 0; iter < 4000; ++iter) {
        if (tail_bound(caps) <= eps / 2) break;
        // grow the non-terminating index with the largest tail
        size_t worst = r;
        Rational worst_tail = -1;
        for (size_t v = 0; v < r; ++v) {
          if (stop_[v] >= 0) continue;
          Rational t = index_tail(v, caps[v]);
          if (t < 0) t = 1000000;
          if (t > worst_tail) {
            worst_tail = t;
            worst = v;
          }
        }
        if (worst == r) break;
        caps[worst] += 8;
      }
    }
    if (caps.size() != r) throw PreconditionError("caps must match the number of indices");
    const Rational tail = tail_bound(caps);
    if (tail < 0) throw PreconditionError("caps too small for a rigorous tail bound");
    long total = 0;
    for (size_t v = 0; v < r; ++v) {
      ensure_g(v, caps[v]);
      total += caps[v];
    }
    ensure_w(total);
    BoundedValue sum(0);
    std::vector<long> idx(r, 0);
    std::function<void(size_t, long, BoundedValue)> rec = [&](size_t v, long used, BoundedValue prod) {
      if (v == r) {
        sum = (sum + (prod * w_[static_cast<size_t>(used)]).rounded()).rounded();
        return;
      }
      const long cap = stop_[v] >= 0 ? std::min(caps[v], stop_[v]) : caps[v];
      for (long i = 0; i <= cap; ++i) {
        const BoundedValue& gv = g_[v][static_cast<size_t>(i)];
        if (gv.exact() && is_zero(gv.value)) continue;
        rec(v + 1, used + i, (prod * gv).rounded());
      }
    };
    rec(0, 0, BoundedValue(1));
    return {sum.value, sum.error_bound + tail};
  }

 private:
  Rational ratio_w(long n) const {
    const Rational qn = pow(spec_.q, n);
    const Rational den = 1 - spec_.c * qn;
    if (is_zero(den)) throw NonGenericError("phi_D denominator parameter vanishes");
    return (1 - spec_.a * qn) / den;
  }

  void ensure_w(long n) {
    while (static_cast<long>(w_.size()) <= n) {
      const long k = static_cast<long>(w_.size()) - 1;
      if (k + 1 <= w_start_) {
        w_.push_back(k + 1 < w_start_ ? BoundedValue(0) : w0_);
        continue;
      }
      w_.push_back((w_.back() * BoundedValue(ratio_w(k))).rounded());
    }
  }

  void ensure_g(size_t v, long i) {
    auto& g = g_[v];
    while (static_cast<long>(g.size()) <= i) {
      const long k = static_cast<long>(g.size()) - 1;
      const Rational qk = pow(spec_.q, k);
      const Rational ratio = (1 - spec_.b[v] * qk) / (1 - qk * spec_.q) * spec_.x[v];
      g.push_back((g.back() * BoundedValue(ratio)).rounded());
    }
  }

  // Bound on sum_{i > cap} |g_v(i)|, or -1 if the ratio test fails.
  Rational index_tail(size_t v, long cap) {
    if (stop_[v] >= 0 && cap >= stop_[v]) return 0;
    ensure_g(v, cap + 1);
    const Rational aq = abs(spec_.q);
    const Rational qj = pow(aq, cap + 1);
    const Rational rho = abs(spec_.x[v]) * (1 + abs(spec_.b[v]) * qj) / (1 - qj * aq);
    if (rho >= 1) return -1;
    return g_[v][static_cast<size_t>(cap + 1)].magnitude_bound() / (1 - rho);
  }

  // sup over n of |W(n)|, using the computed values up to n0 and a product
  // bound beyond.
  Rational weight_sup(long n0) {
    const Rational aq = abs(spec_.q);
    for (;; n0 += 8) {
      n0 = std::max(n0, w_start_);
      ensure_w(n0);
      const Rational geo = pow(aq, n0) / (1 - aq);
      const Rational alpha = abs(spec_.a) * geo;
      const Rational gamma = abs(spec_.c) * geo;
      if (alpha >= 1 || gamma >= 1) continue;
      Rational sup = 0;
      for (long n = 0; n <= n0; ++n) sup = std::max(sup, w_[static_cast<size_t>(n)].magnitude_bound());
      return std::max(sup, Rational(w_[static_cast<size_t>(n0)].magnitude_bound() / ((1 - alpha) * (1 - gamma))));
    }
  }

  Rational tail_bound(const std::vector<long>& caps) {
    const size_t r = spec_.b.size();
    Rational full = 1;
    Rational box = 1;
    long total = 0;
    for (size_t v = 0; v < r; ++v) {
      const long cap = stop_[v] >= 0 ? std::min(caps[v], stop_[v]) : caps[v];
      ensure_g(v, cap);
      Rational s = 0;
      for (long i = 0; i <= cap; ++i) s += g_[v][static_cast<size_t>(i)].magnitude_bound();
      const Rational t = index_tail(v, caps[v]);
      if (t < 0) return -1;
      box *= s;
      full *= s + t;
      total += cap;
    }
    if (full == box) return 0;
    return weight_sup(total) * (full - box);
  }

  const MultiPhiDSpec& spec_;
  long w_start_;
  BoundedValue w0_;
  std::vector<BoundedValue> w_;
  std::vector<std::vector<BoundedValue>> g_;
  std::vector<long> stop_;
};

}  // namespace

BoundedValue phi_D(const MultiPhiDSpec& spec, const std::vector<long>& caps, const Rational& eps) {
  MultiSum sum(spec, 0, BoundedValue(1));
  return sum.evaluate(caps, eps);
}

BoundedValue phi_D_tilde(const MultiPhiDSpec& spec, const std::vector<long>& caps, const Rational& eps) {
  long t = 0;
  if (spec.a == 1 || (is_power_of(spec.a, spec.q, 64, &t) && t <= 0)) {
    throw NonGenericError("phi_D_tilde needs a outside q^{-N}");
  }
  // (c q^n)_inf vanishes while c q^n = q^{-e} with e >= 0.
  long start = 0;
  if (spec.c == 1) {
    start = 1;
  } else if (is_power_of(spec.c, spec.q, 64, &t) && t <= 0) {
    start = 1 - t;
  }
  const Rational qs = pow(spec.q, start);
  const Rational inner = eps / 64;
  BoundedValue w0 = (qpoch_inf_rounded(spec.c * qs, spec.q, inner) / qpoch_inf_rounded(spec.a * qs, spec.q, inner)).rounded();
  MultiSum sum(spec, start, w0);
  return sum.evaluate(caps, eps / 2);
}

SeriesCheck product_formula_check(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                  const Rational& e, const Rational& f, const Rational& g, const Rational& h,
                                  const Rational& q, long order) {
  SeriesCheck out{"product_formula", true, -1};
  TruncatedSeries lhs = phi_series_in_x({{a, b}, {c}, g, q}, order) * phi_series_in_x({{d, e}, {f}, h, q}, order);
  for (long j = 0; j <= order; ++j) {
    // Terms of the terminating 4phi3 with argument qch/(abg) are written with
    // g^{j-i} so that g = 0 needs no special case.
    const Rational pre = qpoch(a, j, q) * qpoch(b, j, q) * rqpoch(q, j, q) * rqpoch(c, j, q);
    const Rational base = q * c * h / (a * b);
    const std::array<Rational, 4> up{pow(q, -j), pow(q, 1 - j) / c, d, e};
    const std::array<Rational, 4> down{pow(q, 1 - j) / a, pow(q, 1 - j) / b, f, q};
    Rational coeff = 0;
    Rational term = pre;  // includes the i-dependent Pochhammer ratio
    for (long i = 0; i <= j; ++i) {
      coeff += term * pow(g, j - i) * pow(base, i);
      Rational ratio = 1;
      for (const auto& u : up) ratio *= 1 - u * pow(q, i);
      for (const auto& v : down) ratio /= 1 - v * pow(q, i);
      term *= ratio;
    }
    if (coeff != lhs[j]) {
      out.pass = false;
      out.first_mismatch = j;
      return out;
    }
  }
  return out;
}

SeriesCheck qbinomial_finite_check(const Rational& x, const Rational& q, long nmax) {
  SeriesCheck out{"qbinomial_finite", true, -1};
  for (long n = 0; n <= nmax; ++n) {
    const Rational lhs = phi_partial_sum({{pow(q, -n)}, {}, x, q}, n);
    if (lhs != qpoch(x * pow(q, -n), n, q)) {
      out.pass = false;
      out.first_mismatch = n;
      return out;
    }
  }
  return out;
}

SeriesCheck qbinomial_series_check(const Rational& a, const Rational& q, long order) {
  SeriesCheck out{"qbinomial_series", true, -1};
  TruncatedSeries lhs = phi_series_in_x({{a}, {}, 1, q}, order);
  TruncatedSeries rhs = x_qpoch_inf(a, q, order) * x_qpoch_inf_reciprocal(1, q, order);
  for (long j = 0; j <= order; ++j) {
    if (lhs[j] != rhs[j]) {
      out.pass = false;
      out.first_mismatch = j;
      break;
    }
  }
  return out;
}

SeriesCheck heine_check(const Rational& a, const Rational& b, const Rational& c, const Rational& q, long order) {
  SeriesCheck out{"heine", true, -1};
  const Rational z = a * b / c;
  TruncatedSeries lhs = x_qpoch_inf(1, q, order) * phi_series_in_x({{a, b}, {c}, 1, q}, order);
  TruncatedSeries rhs = x_qpoch_inf(z, q, order) * phi_series_in_x({{c / a, c / b}, {c}, z, q}, order);
  for (long j = 0; j <= order; ++j) {
    if (lhs[j] != rhs[j]) {
      out.pass = false;
      out.first_mismatch = j;
      break;
    }
  }
  return out;
}

}  // namespace qhyper
