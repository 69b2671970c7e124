#include "qhyper/runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <thread>

#include "qhyper/contiguity.hpp"
#include "qhyper/threeterm.hpp"
#include "qhyper/transforms.hpp"

namespace qhyper {

using nlohmann::json;

Rational RunConfig::eps_value() const { return parse_rational(eps); }

json config_to_json(const RunConfig& c) {
  return json{{"point",
               {{"q", to_string(c.point.q)},
                {"a", to_string(c.point.a)},
                {"b", to_string(c.point.b)},
                {"c", to_string(c.point.c)},
                {"window", c.point.window}}},
              {"order", c.order},
              {"eps", c.eps},
              {"grid", c.grid},
              {"suite", c.suite},
              {"out", c.out},
              {"threads", c.threads}};
}

RunConfig config_from_json(const json& j, RunConfig base) {
  try {
    if (j.contains("point")) {
      const json& p = j.at("point");
      auto rat = [&p](const char* key, Rational& slot) {
        if (p.contains(key)) slot = parse_rational(p.at(key).get<std::string>());
      };
      rat("q", base.point.q);
      rat("a", base.point.a);
      rat("b", base.point.b);
      rat("c", base.point.c);
      if (p.contains("window")) base.point.window = p.at("window").get<long>();
    }
    if (j.contains("order")) base.order = j.at("order").get<long>();
    if (j.contains("eps")) base.eps = j.at("eps").get<std::string>();
    if (j.contains("grid")) base.grid = j.at("grid").get<long>();
    if (j.contains("suite")) base.suite = j.at("suite").get<std::string>();
    if (j.contains("out")) base.out = j.at("out").get<std::string>();
    if (j.contains("threads")) base.threads = j.at("threads").get<unsigned>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

long max_degree_on_grid(long bound) {
  long best = -1;
  for (long k = -bound; k <= bound; ++k)
    for (long l = k; l <= bound; ++l)
      for (long m = -bound; m <= bound; ++m)
        for (long n = -bound; n <= bound; ++n) best = std::max(best, degree_bound({k, l, m, n}));
  return best;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> warnings;
  const auto& names = suite_names();
  if (c.suite != "all" && std::find(names.begin(), names.end(), c.suite) == names.end()) {
    throw ConfigError("unknown suite " + c.suite);
  }
  Rational eps;
  try {
    eps = c.eps_value();
  } catch (const std::exception& e) {
    throw ConfigError("eps: " + std::string(e.what()));
  }
  if (eps <= 0) throw ConfigError("eps must be positive");
  if (c.order < 1) throw ConfigError("order must be at least 1");
  if (c.grid < 0) throw ConfigError("grid bound must be non-negative");
  const GenericityCheck g = inspect_generic(c.point);
  if (!g.generic) {
    std::string msg = "point is not generic:";
    for (const auto& v : g.violations) msg += " " + v + ";";
    throw ConfigError(msg);
  }
  const long need = max_degree_on_grid(c.grid) + 5;
  if (c.order < need) {
    warnings.push_back("order " + std::to_string(c.order) + " is below max d + 5 = " + std::to_string(need) +
                       "; coefficient checks still hold but cover fewer terms");
  }
  return warnings;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"contiguity", "corollary", "summations", "threeterm", "transforms"};
  return names;
}

namespace {

struct SuiteBuilder {
  json cases = json::object();
  long failed = 0;

  void add(std::string id, json entry) {
    const bool pass = entry.at("pass").get<bool>();
    if (!pass) ++failed;
    std::string key = id;
    for (int i = 2; cases.contains(key); ++i) key = id + "#" + std::to_string(i);
    cases[key] = std::move(entry);
  }
  void add(const ExactReport& r) {
    add(r.identity_id, json{{"pass", r.pass}, {"checked", r.checked}, {"first_failure", r.first_failure},
                            {"detail", r.detail}});
  }
  void add(const VerificationReport& r) {
    add(r.identity_id, json{{"pass", r.pass},
                            {"lhs", to_string(r.lhs.value)},
                            {"rhs", to_string(r.rhs.value)},
                            {"margin", to_string(r.margin)},
                            {"bound", to_string(r.lhs.error_bound + r.rhs.error_bound)}});
  }
  void add(const ContiguityCheck& r) {
    add(r.identity_id, json{{"pass", r.pass}, {"effective_order", r.effective_order},
                            {"first_failure", r.first_mismatch}, {"detail", r.detail}});
  }
  void fail(std::string id, const std::string& what) {
    add(std::move(id), json{{"pass", false}, {"detail", what}});
  }
  json finish() const {
    return json{{"pass", failed == 0},
                {"checked", static_cast<long>(cases.size())},
                {"failed", failed},
                {"cases", cases}};
  }
};

std::vector<ShiftQuad> grid_quads(long bound) {
  std::vector<ShiftQuad> out;
  for (long k = -bound; k <= bound; ++k)
    for (long l = -bound; l <= bound; ++l)
      for (long m = -bound; m <= bound; ++m)
        for (long n = -bound; n <= bound; ++n) out.push_back({k, l, m, n});
  return out;
}

// Runs fn over [0, count) on worker threads; results land by index.
template <typename T>
std::vector<T> parallel_map(size_t count, unsigned threads, const std::function<T(size_t)>& fn) {
  std::vector<T> out(count);
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<size_t>(workers, std::max<size_t>(count, 1)));
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next++; i < count; i = next++) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

using Entries = std::vector<std::pair<std::string, json>>;

json exact_entry(const ExactReport& r) {
  return json{{"pass", r.pass}, {"checked", r.checked}, {"first_failure", r.first_failure}, {"detail", r.detail}};
}

json threeterm_suite(const RunConfig& cfg) {
  SuiteBuilder sb;
  const GenericPoint& p = cfg.point;
  for (const auto& [quad, want] : {std::pair{ShiftQuad{1, 1, 1, 0}, std::pair{1, 0}},
                                   std::pair{ShiftQuad{0, 0, 0, 0}, std::pair{0, 1}}}) {
    const QRPair qr = compute_QR(quad, p);
    const bool ok = qr.Q == RationalFunction(Polynomial(Rational(want.first))) &&
                    qr.R == RationalFunction(Polynomial(Rational(want.second)));
    sb.add("anchor(" + quad.to_string() + ")",
           json{{"pass", ok}, {"Q", qr.Q.to_string()}, {"R", qr.R.to_string()}});
  }
  const auto quads = grid_quads(cfg.grid);
  const auto results = parallel_map<Entries>(quads.size(), cfg.threads, [&](size_t i) {
    Entries e;
    const ShiftQuad& quad = quads[i];
    const std::string tag = "(" + quad.to_string() + ")";
    try {
      e.emplace_back("relation" + tag, exact_entry(verify_three_term(quad, p, cfg.order)));
      const Canonical c = canonicalize(quad, p);
      CoefficientFamilies fam(c.quad, c.point);
      const Polynomial Pt = compute_P_theorem(fam);
      const Polynomial Pp = compute_P_proposition(fam);
      e.emplace_back("P_paths" + tag, json{{"pass", Pt == Pp}, {"degree", Pt.degree()}});
      const long d = degree_bound(c.quad);
      bool deg_ok = Pt.degree() <= d;
      json deg{{"d", d}, {"degree", Pt.degree()}};
      if (d >= 0) {
        const Rational lead = leading_coefficient(c.quad, c.point);
        deg_ok = deg_ok && Pt.coefficient(d) == lead;
        deg["leading"] = to_string(lead);
      }
      deg["pass"] = deg_ok;
      e.emplace_back("degree" + tag, deg);
      e.emplace_back("thresholds" + tag, exact_entry(verify_vanishing_thresholds(c.quad, c.point, 15)));
    } catch (const std::exception& ex) {
      e.emplace_back("error" + tag, json{{"pass", false}, {"detail", ex.what()}});
    }
    return e;
  });
  for (const auto& entries : results)
    for (const auto& [id, j] : entries) sb.add(id, j);
  return sb.finish();
}

json corollary_suite(const RunConfig& cfg) {
  SuiteBuilder sb;
  const auto quads = grid_quads(cfg.grid);
  const auto results = parallel_map<Entries>(quads.size(), cfg.threads, [&](size_t i) {
    Entries e;
    try {
      const ExactReport r = verify_corollary(quads[i], cfg.point);
      e.emplace_back("corollary(" + quads[i].to_string() + ")", exact_entry(r));
    } catch (const std::exception& ex) {
      e.emplace_back("corollary(" + quads[i].to_string() + ")", json{{"pass", false}, {"detail", ex.what()}});
    }
    return e;
  });
  for (const auto& entries : results)
    for (const auto& [id, j] : entries) sb.add(id, j);
  return sb.finish();
}

// Every n list with entries in [0, 3] of length r.
std::vector<std::vector<long>> n_lists(long r) {
  std::vector<std::vector<long>> out;
  long total = 1;
  for (long v = 0; v < r; ++v) total *= 4;
  for (long code = 0; code < total; ++code) {
    std::vector<long> ns;
    long c = code;
    for (long v = 0; v < r; ++v, c /= 4) ns.push_back(c % 4);
    out.push_back(ns);
  }
  return out;
}

template <typename Fn>
void guarded(SuiteBuilder& sb, const std::string& id, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    sb.fail(id, e.what());
  }
}

json transforms_suite(const RunConfig& cfg) {
  SuiteBuilder sb;
  const Rational eps = cfg.eps_value();
  for (long r = 1; r <= 2; ++r) {
    for (long m = -3; m <= 3; ++m) {
      for (long s = 0; s <= 3; ++s) {
        for (const auto& ns : n_lists(r)) {
          guarded(sb, "tf1", [&] { sb.add(verify_tf1(standard_instance(TransformKind::tf1, r, m, s, ns), eps)); });
          if (std::all_of(ns.begin(), ns.end(), [s](long n) { return n >= s; })) {
            guarded(sb, "tf2", [&] { sb.add(verify_tf2(standard_instance(TransformKind::tf2, r, m, s, ns), eps)); });
          }
          if (s == 0 && m >= 0) {
            guarded(sb, "original", [&] {
              VerificationReport rep = verify_gasper_original(standard_instance(TransformKind::tf1, r, m, s, ns), eps);
              rep.identity_id = "original" + rep.identity_id;
              sb.add(rep);
            });
          }
        }
      }
    }
  }
  const Rational q(1, 3);
  auto R = [](long a, long b) { return make_rational(a, b); };
  guarded(sb, "andrews", [&] {
    const std::vector<MultiPhiDSpec> specs = {{R(1, 4), {R(2, 5)}, R(3, 7), {R(1, 2)}, q},
                                              {R(-1, 5), {R(2, 5), R(5, 3)}, R(3, 7), {R(1, 2), R(-1, 3)}, q}};
    for (size_t i = 0; i < specs.size(); ++i) {
      VerificationReport rep = verify_andrews(specs[i], eps);
      rep.identity_id = "andrews#" + std::to_string(i);
      sb.add(rep);
    }
  });
  guarded(sb, "andrews_prime", [&] {
    VerificationReport rep = verify_andrews_prime({R(-3, 2), {R(1, 4), R(-2, 5)}, {R(5, 7), R(1, 9)}, R(1, 3), q}, eps);
    rep.identity_id = "andrews_prime#0";
    sb.add(rep);
  });
  guarded(sb, "reversal", [&] {
    VerificationReport a =
        verify_reversal_lemma({2, {1, 2}, R(5, 2), R(-3, 5), R(2, 5), {R(1, 2), R(-2, 3)}, q}, eps);
    a.identity_id = "reversal#0";
    sb.add(a);
    VerificationReport b = verify_reversal_corollary({-3, {1, 1}, R(2, 7), R(3, 5), R(1, 4), {R(1, 2), R(3, 4)}, q}, eps);
    b.identity_id = "reversal_corollary#0";
    sb.add(b);
  });
  guarded(sb, "vanishing_sum", [&] {
    VerificationReport rep = verify_vanishing_sum_lemma(
        {4, {0, 3, 1}, R(9, 7), {R(3, 5), R(-1, 6), R(2, 3)}, R(4, 11), R(-7, 4), {R(1, 2), R(5, 3), R(2, 9)}, q});
    rep.identity_id = "vanishing_sum#0";
    sb.add(rep);
  });
  return sb.finish();
}

json summations_suite(const RunConfig& cfg) {
  SuiteBuilder sb;
  const Rational eps = cfg.eps_value();
  for (long r = 0; r <= 2; ++r) {
    for (long s = 0; s <= 3; ++s) {
      for (const auto& ns : n_lists(r)) {
        guarded(sb, "sf1", [&] {
          sb.add(verify_sf(SummationKind::sf1, standard_instance(TransformKind::tf1, r, 0, s, ns), eps));
        });
        guarded(sb, "sf3", [&] {
          sb.add(verify_sf(SummationKind::sf3, standard_instance(TransformKind::tf1, r, -1, s, ns), eps));
        });
        guarded(sb, "sf3_terminating", [&] {
          TransformInstance inst = standard_instance(TransformKind::tf1, r, -1, s, ns);
          inst.a = pow(inst.q, -inst.n_sum() - inst.s - 1);
          VerificationReport rep = verify_sf(SummationKind::sf3, inst, eps);
          rep.identity_id = "terminating_" + rep.identity_id;
          rep.pass = rep.pass && rep.lhs.exact() && is_zero(rep.lhs.value);
          sb.add(rep);
        });
        if (std::all_of(ns.begin(), ns.end(), [s](long n) { return n >= s; })) {
          guarded(sb, "sf2", [&] {
            sb.add(verify_sf(SummationKind::sf2, standard_instance(TransformKind::tf2, r, 0, s, ns), eps));
          });
          guarded(sb, "sf4", [&] {
            sb.add(verify_sf(SummationKind::sf4, standard_instance(TransformKind::tf2, r, -1, s, ns), eps));
          });
        }
      }
    }
  }
  const Rational q(1, 3);
  const std::vector<Rational> cs = {make_rational(1, 7), make_rational(2, 11)};
  for (long r = 1; r <= 2; ++r) {
    for (const auto& ns : n_lists(r)) {
      long total = 0;
      for (long n : ns) total += n;
      for (long m = total + 1; m <= total + 3; ++m) {
        guarded(sb, "sf15", [&] {
          VerificationReport rep = verify_sf15(m, ns, std::vector<Rational>(cs.begin(), cs.begin() + r), q);
          rep.pass = rep.pass && rep.lhs.exact() && is_zero(rep.margin);
          sb.add(rep);
        });
      }
    }
  }
  return sb.finish();
}

json contiguity_suite_json(const RunConfig& cfg) {
  SuiteBuilder sb;
  try {
    for (const auto& c : contiguity_suite(cfg.point, cfg.order, cfg.eps_value())) sb.add(c);
  } catch (const std::exception& e) {
    sb.fail("contiguity", e.what());
  }
  return sb.finish();
}

}  // namespace

json run_suite(const std::string& name, const RunConfig& config) {
  if (name == "threeterm") return threeterm_suite(config);
  if (name == "corollary") return corollary_suite(config);
  if (name == "transforms") return transforms_suite(config);
  if (name == "summations") return summations_suite(config);
  if (name == "contiguity") return contiguity_suite_json(config);
  throw ConfigError("unknown suite " + name);
}

json run_report(const RunConfig& config) {
  json suites = json::object();
  bool pass = true;
  for (const auto& name : suite_names()) {
    if (config.suite != "all" && config.suite != name) continue;
    json s = run_suite(name, config);
    pass = pass && s.at("pass").get<bool>();
    suites[name] = std::move(s);
  }
  json cfg = config_to_json(config);
  cfg.erase("out");
  cfg.erase("threads");
  return json{{"config", cfg}, {"pass", pass}, {"suites", suites}};
}

}  // namespace qhyper
