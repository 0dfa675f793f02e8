#pragma once

// The dytwist command-line front end as a library, so that tests can drive
// it without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dytwist/rmat.hpp"
#include "dytwist/specfun.hpp"
#include "dytwist/types.hpp"
#include "dytwist/verify.hpp"

namespace dytwist::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

enum class Format { kJson, kCsv, kPretty };

struct RunConfig {
  std::string command;
  std::optional<rmat::RKind> kind;
  std::optional<Complex> beta;
  std::string r_text = "5";
  bool unnormalized = false;
  std::vector<std::string> suite{"all"};
  std::uint64_t seed = 1;
  int count = 20;
  verify::Interval beta_re_range{-4.0, 4.0};
  verify::Interval beta_im_range{-1.0, 1.0};
  verify::Interval r_range{3.0, 50.0};
  unsigned threads = 0;
  std::string identity;
  std::string beta_re_grid;
  std::string beta_im_grid = "0";
  std::string target;
  std::vector<int> n_list;
  std::optional<std::pair<double, double>> ladder;
  std::map<std::string, double> tolerances;
  std::optional<std::string> output_path;
  Format format = Format::kJson;
  double guard = kDefaultPoleGuard;
  specfun::QuadratureSettings quadrature;

  nlohmann::json to_json() const;
};

/// A rendered command result. `columns`/`rows` feed the CSV and pretty
/// renderers; `results` is the JSON list. Every record carries a "status".
struct Report {
  RunConfig config;
  nlohmann::json results = nlohmann::json::array();
  nlohmann::json extra = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  double wall_time = 0.0;
  int exit_code = kExitPass;

  nlohmann::json summary() const;
  nlohmann::json to_json() const;
};

Report cmd_eval(const RunConfig& cfg);
Report cmd_check(const RunConfig& cfg);
Report cmd_scan(const RunConfig& cfg);
Report cmd_product(const RunConfig& cfg);
Report cmd_limits(const RunConfig& cfg);

std::string render(const Report& report, Format format);

/// Full front end: parses args (args[0] is the program name), runs the
/// command and writes the report to `out` or the --out file. Returns the
/// exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dytwist::cli
