// Command-line front end: P, Q, R at a configured point and the verification suites.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qhyper/runner.hpp"
#include "qhyper/threeterm.hpp"

using namespace qhyper;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2 };

struct Options {
  std::string config_path;
  std::string quad;
  std::string suite;
  long grid = -1;
  long order = -1;
  std::string eps;
  std::string out;
  unsigned threads = 0;
  bool as_json = false;
};

RunConfig resolve(const Options& o) {
  RunConfig cfg;
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("QHYPER_CONFIG")) path = env;
  }
  if (!path.empty()) cfg = load_config_file(path, cfg);
  if (!o.suite.empty()) cfg.suite = o.suite;
  if (o.grid >= 0) cfg.grid = o.grid;
  if (o.order >= 0) cfg.order = o.order;
  if (!o.eps.empty()) cfg.eps = o.eps;
  if (!o.out.empty()) cfg.out = o.out;
  if (o.threads) cfg.threads = o.threads;
  for (const auto& w : validate(cfg)) std::cerr << "warning: " << w << "\n";
  return cfg;
}

json coefficients(const Polynomial& p) {
  json out = json::array();
  for (long i = 0; i <= p.degree(); ++i) out.push_back(to_string(p.coefficient(i)));
  return out;
}

int compute_p(const Options& o) {
  const RunConfig cfg = resolve(o);
  const ShiftQuad quad = parse_quad(o.quad);
  const Canonical c = canonicalize(quad, cfg.point);
  CoefficientFamilies fam(c.quad, c.point);
  const Polynomial pt = compute_P_theorem(fam);
  const Polynomial pp = compute_P_proposition(fam);
  const bool equal = pt == pp;
  if (o.as_json) {
    json j{{"quad", quad.to_string()},
           {"canonical_quad", c.quad.to_string()},
           {"swapped", c.swapped},
           {"d", degree_bound(c.quad)},
           {"form_ab", coefficients(pt)},
           {"form_cd", coefficients(pp)},
           {"equal", equal}};
    std::cout << j.dump(2) << "\n";
  } else if (pt.is_zero() && pp.is_zero()) {
    std::cout << "P = 0\n";
  } else {
    std::cout << "quad " << quad.to_string() << (c.swapped ? " (a, b swapped to " + c.quad.to_string() + ")" : "")
              << ", d = " << degree_bound(c.quad) << "\n";
    std::cout << "form A, B:  " << coefficients(pt).dump() << "\n";
    std::cout << "form C, D:  " << coefficients(pp).dump() << "\n";
    std::cout << "equal: " << (equal ? "true" : "false") << "\n";
  }
  return equal ? kPass : kFail;
}

int compute_qr(const Options& o) {
  const RunConfig cfg = resolve(o);
  const ShiftQuad quad = parse_quad(o.quad);
  const QRPair qr = compute_QR(quad, cfg.point);
  const ExactReport rep = verify_relation(quad, qr.Q, qr.R, cfg.point, cfg.order);
  if (o.as_json) {
    json j{{"quad", quad.to_string()},
           {"Q", {{"numerator", coefficients(qr.Q.numerator())}, {"denominator", coefficients(qr.Q.denominator())}}},
           {"R", {{"numerator", coefficients(qr.R.numerator())}, {"denominator", coefficients(qr.R.denominator())}}},
           {"residual_zero", rep.pass},
           {"order", cfg.order}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Q = " << qr.Q.to_string() << "\n";
    std::cout << "R = " << qr.R.to_string() << "\n";
    std::cout << "residual: " << (rep.pass ? "0" : "nonzero at x^" + std::to_string(rep.first_failure))
              << " through x^" << cfg.order << "\n";
  }
  return rep.pass ? kPass : kFail;
}

int verify(const Options& o) {
  const RunConfig cfg = resolve(o);
  const auto t0 = std::chrono::steady_clock::now();
  const json report = run_report(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw ConfigError("cannot write " + cfg.out);
    f << text;
  }
  for (const auto& [name, s] : report.at("suites").items()) {
    std::cerr << name << ": " << (s.at("pass").get<bool>() ? "pass" : "FAIL") << " (" << s.at("checked").get<long>()
              << " cases, " << s.at("failed").get<long>() << " failed)\n";
  }
  std::cerr << "elapsed " << secs << " s\n";
  return report.at("pass").get<bool>() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact three-term relations for 2phi1 and verification of the surrounding identities"};
  app.require_subcommand(0, 1);
  Options o;
  bool print_config = false;
  app.add_option("--config", o.config_path, "JSON config file (default: $QHYPER_CONFIG)");
  app.add_flag("--print-config", print_config, "Print the effective configuration and exit");

  auto* p = app.add_subcommand("compute-p", "Both closed forms of P");
  p->add_option("--quad", o.quad, "k,l,m,n")->required();
  p->add_flag("--json", o.as_json);
  auto* qr = app.add_subcommand("compute-qr", "Q and R as reduced fractions in x");
  qr->add_option("--quad", o.quad, "k,l,m,n")->required();
  qr->add_option("--order", o.order, "Truncation order of the residual check");
  qr->add_flag("--json", o.as_json);
  auto* v = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  v->add_option("--suite", o.suite)->check(CLI::IsMember({"threeterm", "corollary", "transforms", "summations",
                                                          "contiguity", "all"}));
  v->add_option("--grid", o.grid, "Bound B on |k|, |l|, |m|, |n|");
  v->add_option("--order", o.order, "Truncation order N");
  v->add_option("--eps", o.eps, "Tolerance, e.g. 1e-25");
  v->add_option("--out", o.out, "Report path (default stdout)");
  v->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  for (auto* sub : {p, qr, v}) sub->add_option("--config", o.config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }
  try {
    if (print_config) {
      std::cout << config_to_json(resolve(o)).dump(2) << "\n";
      return kPass;
    }
    if (p->parsed()) return compute_p(o);
    if (qr->parsed()) return compute_qr(o);
    if (v->parsed()) return verify(o);
    std::cout << app.help();
    return kConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NonGenericError& e) {
    std::cerr << "genericity error: " << e.what() << "\n";
    return kConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}
