#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "qhyper/qpoch.hpp"
#include "qhyper/rational.hpp"

namespace qhyper {

// Bad config file, unparsable values or a non-generic configured point.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  GenericPoint point = default_point();
  long order = 40;
  std::string eps = "1e-25";
  long grid = 3;
  std::string suite = "all";
  std::string out;
  unsigned threads = 0;  // 0: hardware concurrency

  Rational eps_value() const;
};

nlohmann::json config_to_json(const RunConfig& config);
/// Fields present in j override those of base.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Throws ConfigError. Returns warnings that do not stop the run.
std::vector<std::string> validate(const RunConfig& config);

/// Largest degree bound d over the grid |k|, |l|, |m|, |n| <= bound.
long max_degree_on_grid(long bound);

const std::vector<std::string>& suite_names();  // without "all"

/// One suite: {"pass", "checked", "failed", "cases": {id: {...}}}.
nlohmann::json run_suite(const std::string& name, const RunConfig& config);

/// Full report for config.suite (which may be "all").
nlohmann::json run_report(const RunConfig& config);

}  // namespace qhyper
