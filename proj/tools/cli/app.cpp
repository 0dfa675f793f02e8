#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli.hpp"
#include "dytwist/errors.hpp"
#include "parse.hpp"

#ifndef DYTWIST_VERSION
#define DYTWIST_VERSION "unknown"
#endif

namespace dytwist::cli {
namespace {

using nlohmann::json;

const char* const kCommands[] = {"eval", "check", "scan", "product", "limits"};

bool is_command(const std::string& s) {
  for (const char* c : kCommands) {
    if (s == c) return true;
  }
  return false;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt::format("{:.17g}", v.get<double>());
  return v.dump();
}

// Turns a config document into flag arguments. Placed before the user's
// own flags so that the latter win.
std::vector<std::string> config_args(const std::string& path, std::string& command) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open config '{}'", path));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(fmt::format("config '{}': {}", path, e.what()));
  }
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  std::vector<std::string> args;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "command") {
      if (command.empty()) command = v.get<std::string>();
      continue;
    }
    if (key == "config" || key == "out") {
      throw InvalidArgument(fmt::format("config key '{}' is only accepted as a flag", key));
    }
    const std::string flag = "--" + key;
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back(flag);
    } else if (v.is_array()) {
      std::vector<std::string> parts;
      for (const auto& e : v) parts.push_back(scalar_text(e));
      args.push_back(flag);
      args.push_back(fmt::format("{}", fmt::join(parts, ",")));
    } else if (v.is_object()) {
      std::vector<std::string> parts;
      for (auto e = v.begin(); e != v.end(); ++e) {
        parts.push_back(e.key() + "=" + scalar_text(e.value()));
      }
      args.push_back(flag);
      args.push_back(fmt::format("{}", fmt::join(parts, ",")));
    } else {
      args.push_back(flag);
      args.push_back(scalar_text(v));
    }
  }
  return args;
}

struct RawOptions {
  std::string kind, beta, r, suite = "all", beta_re_range = "-4:4", beta_im_range = "-1:1",
                       r_range = "3:50", identity, beta_re, beta_im = "0", target, n_list,
                       ladder, tol, out, format = "json", config;
  bool unnormalized = false;
  std::uint64_t seed = 1;
  int count = 20;
  unsigned threads = 0;
};

void apply_env(RunConfig& cfg) {
  if (const char* g = std::getenv("DYTWIST_GUARD"); g != nullptr && *g != '\0') {
    cfg.guard = parse_double(g);
    if (!(cfg.guard > 0.0)) throw InvalidArgument("DYTWIST_GUARD must be > 0");
  }
  if (const char* t = std::getenv("DYTWIST_QUAD_TOL"); t != nullptr && *t != '\0') {
    cfg.quadrature.abs_tol = parse_double(t);
    cfg.quadrature.validate();
  }
}

RunConfig build_config(const std::string& command, const RawOptions& raw) {
  RunConfig cfg;
  cfg.command = command;
  if (!raw.kind.empty()) {
    cfg.kind = rmat::parse_kind(raw.kind);
    if (!cfg.kind) throw InvalidArgument(fmt::format("unknown kind '{}'", raw.kind));
  }
  if (!raw.beta.empty()) cfg.beta = parse_complex(raw.beta);
  cfg.r_text = raw.r.empty() ? "5" : raw.r;
  cfg.unnormalized = raw.unnormalized;
  cfg.suite = split_list(raw.suite);
  cfg.seed = raw.seed;
  cfg.count = raw.count;
  auto interval = [](const std::string& s) {
    const auto [lo, hi] = parse_interval(s);
    return verify::Interval{lo, hi};
  };
  cfg.beta_re_range = interval(raw.beta_re_range);
  cfg.beta_im_range = interval(raw.beta_im_range);
  cfg.r_range = interval(raw.r_range);
  cfg.threads = raw.threads;
  cfg.identity = raw.identity;
  cfg.beta_re_grid = raw.beta_re;
  cfg.beta_im_grid = raw.beta_im;
  cfg.target = raw.target;
  if (!raw.n_list.empty()) cfg.n_list = parse_int_list(raw.n_list);
  if (!raw.ladder.empty()) cfg.ladder = parse_interval(raw.ladder);
  if (!raw.tol.empty()) cfg.tolerances = parse_tolerances(raw.tol);
  if (!raw.out.empty()) cfg.output_path = raw.out;
  if (raw.format == "json") {
    cfg.format = Format::kJson;
  } else if (raw.format == "csv") {
    cfg.format = Format::kCsv;
  } else if (raw.format == "pretty") {
    cfg.format = Format::kPretty;
  } else {
    throw InvalidArgument(fmt::format("unknown format '{}'", raw.format));
  }
  apply_env(cfg);
  return cfg;
}

Report dispatch(const RunConfig& cfg) {
  if (cfg.command == "eval") return cmd_eval(cfg);
  if (cfg.command == "check") return cmd_check(cfg);
  if (cfg.command == "scan") return cmd_scan(cfg);
  if (cfg.command == "product") return cmd_product(cfg);
  return cmd_limits(cfg);
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate and verify double-Yangian R-matrices, twists and Barnes functions",
               "dytwist"};
  app.set_version_flag("--version", DYTWIST_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RawOptions raw;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", raw.format, "json, csv or pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--out", raw.out, "Write the report here instead of stdout");
    sub->add_option("--config", raw.config, "JSON file with default flag values");
    sub->add_option("--tol", raw.tol, "Tolerance overrides, id=value,...");
  };

  auto* eval = app.add_subcommand("eval", "Dump one R-matrix and its normalization");
  eval->add_option("--kind", raw.kind, "dy, v6, v8 or f")->required();
  eval->add_option("--beta", raw.beta, "Rapidity, e.g. 1.2, 0.3-0.1i, -ipi")->required();
  eval->add_option("--r", raw.r, "Deformation scale");
  eval->add_flag("--unnormalized", raw.unnormalized, "Omit the scalar prefactor");
  common(eval);

  auto* check = app.add_subcommand("check", "Run seeded identity suites");
  check->add_option("--suite", raw.suite, "Identity ids or 'all', comma separated");
  check->add_option("--seed", raw.seed, "Sampling seed");
  check->add_option("--count", raw.count, "Samples per identity");
  check->add_option("--beta-re-range", raw.beta_re_range, "lo:hi");
  check->add_option("--beta-im-range", raw.beta_im_range, "lo:hi");
  check->add_option("--r-range", raw.r_range, "lo:hi");
  check->add_option("--threads", raw.threads, "Worker threads (0 = all cores)");
  common(check);

  auto* scan = app.add_subcommand("scan", "Residuals over a parameter grid, one row per point");
  scan->add_option("--identity", raw.identity,
                   "Identity id, or v6_dy / f_id for plain distances")
      ->required();
  scan->add_option("--beta-re", raw.beta_re, "start:stop:steps")->required();
  scan->add_option("--beta-im", raw.beta_im, "start:stop:steps");
  scan->add_option("--r", raw.r, "Value, list a,b,c or start:stop:steps");
  common(scan);

  auto* product = app.add_subcommand("product", "Truncated infinite products vs closed forms");
  product->add_option("--target", raw.target, "rhoF or F")->required()
      ->check(CLI::IsMember({"rhoF", "F"}));
  product->add_option("--beta", raw.beta, "Rapidity (default 1)");
  product->add_option("--r", raw.r, "Deformation scale");
  product->add_option("--N", raw.n_list, "Truncation orders, comma separated")->required();
  common(product);

  auto* limits = app.add_subcommand("limits", "Decay of F - Id and R_V6 - R_DY along r");
  limits->add_option("--beta", raw.beta, "Rapidity (default 1)");
  limits->add_option("--ladder", raw.ladder, "lo:hi, doubled from lo")->required();
  common(limits);

  std::vector<std::string> args(args_in.begin() + (args_in.empty() ? 0 : 1), args_in.end());
  try {
    // Pull in a config file, if any, ahead of the explicit flags.
    std::string config_path, command;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    for (const auto& a : args) {
      if (is_command(a)) {
        command = a;
        break;
      }
    }
    if (!config_path.empty()) {
      const bool had_command = !command.empty();
      auto extra = config_args(config_path, command);
      if (!had_command) {
        if (command.empty()) throw InvalidArgument("no command given");
        args.insert(args.begin(), command);
      }
      const auto pos = std::find(args.begin(), args.end(), command);
      args.insert(pos + 1, extra.begin(), extra.end());
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    const RunConfig cfg = build_config(command, raw);
    const Report report = dispatch(cfg);
    const std::string text = render(report, cfg.format);
    if (cfg.output_path) {
      std::ofstream f(*cfg.output_path, std::ios::binary);
      if (!f) throw InvalidArgument(fmt::format("cannot write '{}'", *cfg.output_path));
      f << text;
    } else {
      out << text;
    }
    return report.exit_code;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dytwist::cli
