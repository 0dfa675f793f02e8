#include <chrono>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "canonical_json.hpp"
#include "cli.hpp"
#include "dytwist/errors.hpp"
#include "dytwist/products.hpp"
#include "parse.hpp"

#ifndef DYTWIST_VERSION
#define DYTWIST_VERSION "unknown"
#endif

namespace dytwist::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

json complex_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

std::string num(double v) {
  if (!std::isfinite(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

DeformationParams params_for(const RunConfig& cfg, double r) {
  DeformationParams p;
  p.r = r;
  p.guard = cfg.guard;
  p.validate();
  return p;
}

double single_r(const RunConfig& cfg) {
  const auto rs = parse_number_list(cfg.r_text);
  if (rs.size() != 1) {
    throw InvalidArgument(fmt::format("--r must be a single value for '{}'", cfg.command));
  }
  return rs.front();
}

// --r for scans: a start:stop:steps grid or a comma list.
std::vector<double> r_values(const RunConfig& cfg) {
  if (cfg.r_text.find(':') != std::string::npos) return parse_grid(cfg.r_text);
  return parse_number_list(cfg.r_text);
}

json check_json(const verify::CheckResult& r) {
  json betas = json::array();
  for (auto b : r.params.betas) betas.push_back(complex_json(b));
  json params{{"betas", betas}, {"r", r.params.r}};
  if (r.params.n) params["N"] = *r.params.n;
  if (r.params.seed) params["seed"] = *r.params.seed;
  if (r.params.index) params["index"] = *r.params.index;
  return json{{"identity", r.identity_id},
              {"params", params},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"status", std::string(verify::to_string(r.status))},
              {"diagnostics", r.diagnostics}};
}

json matrix_json(const CMatrix4& m) {
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < 4; ++i) {
    json rr = json::array();
    json ii = json::array();
    for (int j = 0; j < 4; ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return json{{"re", re}, {"im", im}};
}

json error_json(const Error& e) {
  return json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
}

int exit_code_of(const json& results) {
  for (const auto& r : results) {
    if (r.value("status", "") == "fail") return kExitFail;
  }
  return kExitPass;
}

// Least-squares slope of -log(y) against log(r): the decay order.
std::optional<double> decay_order(const std::vector<double>& rs, const std::vector<double>& ys) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (std::isfinite(ys[i]) && ys[i] > 0.0) pts.emplace_back(std::log(rs[i]), -std::log(ys[i]));
  }
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(pts.size());
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx > 0.0 ? std::optional(sxy / sxx) : std::nullopt;
}

bool is_specfun_identity(std::string_view id) {
  return id == "gamma1_ladder" || id == "gamma2_ladder" || id == "s2_reflection" ||
         id == "s2_shift1" || id == "s2_shift2" || id == "s2_symmetry";
}

// Scan-only measurements without a tolerance.
bool is_distance_identity(std::string_view id) { return id == "v6_dy" || id == "f_id"; }

verify::CheckResult scan_point(const RunConfig& cfg, std::string_view id, Complex beta,
                               double r) {
  const DeformationParams p = params_for(cfg, r);
  const auto& q = cfg.quadrature;
  if (is_distance_identity(id)) {
    const SpectralPoint b(beta);
    CMatrix4 diff;
    if (id == "v6_dy") {
      diff = rmat::r_matrix(rmat::RKind::kV6, b, p, true, q) -
             rmat::r_matrix(rmat::RKind::kDY, b, p, true, q);
    } else {
      diff = rmat::twist_F_closed(b, p, q) - CMatrix4::Identity();
    }
    verify::CheckResult res;
    res.identity_id = std::string(id);
    res.params = {{beta}, r, {}, {}, {}};
    res.residual = sup_norm(diff);
    res.tolerance = std::numeric_limits<double>::infinity();
    res.status = verify::Status::kPass;
    res.diagnostics = "absolute sup-norm distance";
    return res;
  }
  if (is_specfun_identity(id)) {
    const specfun::Periods w{2.0, r};
    if (id == "gamma1_ladder") return verify::check_gamma1_ladder(beta, r, cfg.guard);
    if (id == "gamma2_ladder") return verify::check_gamma2_ladder(beta, w, q, cfg.guard);
    if (id == "s2_reflection") return verify::check_s2_reflection(beta, w, q, cfg.guard);
    if (id == "s2_shift1") return verify::check_s2_shift(beta, w, 1, q, cfg.guard);
    if (id == "s2_shift2") return verify::check_s2_shift(beta, w, 2, q, cfg.guard);
    return verify::check_s2_symmetry(beta, w, q, cfg.guard);
  }
  // Matrix identities: rapidities (beta, 0, -beta/2), so every difference
  // is a nonzero multiple of beta.
  verify::Sample s{0, SpectralPoint(beta), SpectralPoint(0.0), SpectralPoint(-0.5 * beta), r};
  verify::SampleSpec spec;
  spec.seed = 0;
  return verify::run_identity(id, s, spec, cfg.tolerances, q, cfg.guard);
}

}  // namespace

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  if (kind) j["kind"] = std::string(rmat::to_string(*kind));
  if (beta) j["beta"] = complex_json(*beta);
  j["r"] = r_text;
  j["unnormalized"] = unnormalized;
  j["suite"] = suite;
  j["seed"] = seed;
  j["count"] = count;
  j["beta_re_range"] = json::array({beta_re_range.lo, beta_re_range.hi});
  j["beta_im_range"] = json::array({beta_im_range.lo, beta_im_range.hi});
  j["r_range"] = json::array({r_range.lo, r_range.hi});
  if (!identity.empty()) j["identity"] = identity;
  if (!beta_re_grid.empty()) j["beta_re_grid"] = beta_re_grid;
  j["beta_im_grid"] = beta_im_grid;
  if (!target.empty()) j["target"] = target;
  if (!n_list.empty()) j["N"] = n_list;
  if (ladder) j["ladder"] = json::array({ladder->first, ladder->second});
  j["tolerances"] = tolerances;
  j["format"] = format == Format::kJson ? "json" : format == Format::kCsv ? "csv" : "pretty";
  j["guard"] = guard;
  j["quad_tol"] = quadrature.abs_tol;
  // The output path and thread count do not change the results.
  return j;
}

json Report::summary() const {
  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : results) {
    const auto s = r.value("status", "");
    pass += s == "pass";
    fail += s == "fail";
    skip += s == "skip";
  }
  return json{{"pass", pass}, {"fail", fail}, {"skip", skip},
              {"total", static_cast<int>(results.size())}};
}

json Report::to_json() const {
  json j{{"tool_version", DYTWIST_VERSION},
         {"config", config.to_json()},
         {"results", results},
         {"summary", summary()},
         {"wall_time", wall_time}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

Report cmd_eval(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  if (!cfg.kind) throw InvalidArgument("eval needs --kind");
  if (!cfg.beta) throw InvalidArgument("eval needs --beta");
  Report rep;
  rep.config = cfg;
  const double r = single_r(cfg);
  const DeformationParams p = params_for(cfg, r);
  const SpectralPoint beta(*cfg.beta);
  const bool normalized = !cfg.unnormalized;
  json rec{{"kind", std::string(rmat::to_string(*cfg.kind))},
           {"beta", complex_json(beta.beta())},
           {"r", r},
           {"normalized", normalized}};
  rep.columns = {"row", "col", "re", "im"};
  try {
    const CMatrix4 m = rmat::r_matrix(*cfg.kind, beta, p, false, cfg.quadrature);
    Complex scale{1.0, 0.0};
    if (normalized) {
      scale = rmat::normalization(*cfg.kind, beta, p, cfg.quadrature);
      rec["normalization"] = complex_json(scale);
    } else {
      rec["normalization"] = nullptr;
    }
    const CMatrix4 full = scale * m;
    rec["matrix"] = matrix_json(full);
    rec["status"] = "pass";
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        rep.rows.push_back({std::to_string(i + 1), std::to_string(j + 1),
                            num(full(i, j).real()), num(full(i, j).imag())});
      }
    }
  } catch (const InvalidArgument&) {
    throw;
  } catch (const Error& e) {
    rec["status"] = "fail";
    rec["error"] = error_json(e);
    rep.exit_code = kExitUsage;
  }
  rep.results.push_back(rec);
  rep.wall_time = seconds_since(t0);
  return rep;
}

Report cmd_check(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  verify::SampleSpec spec;
  spec.count = cfg.count;
  spec.seed = cfg.seed;
  spec.beta_re = cfg.beta_re_range;
  spec.beta_im = cfg.beta_im_range;
  spec.r = cfg.r_range;
  verify::SuiteOptions opts;
  opts.tolerances = cfg.tolerances;
  opts.quadrature = cfg.quadrature;
  opts.guard = cfg.guard;
  opts.threads = cfg.threads;
  const auto results = verify::run_suite(spec, cfg.suite, opts);

  Report rep;
  rep.config = cfg;
  rep.columns = {"identity", "index", "beta1_re", "beta1_im", "beta2_re", "beta2_im",
                 "beta3_re", "beta3_im", "r", "residual", "tolerance", "status"};
  for (const auto& r : results) {
    rep.results.push_back(check_json(r));
    std::vector<std::string> row{r.identity_id, std::to_string(r.params.index.value_or(-1))};
    for (std::size_t k = 0; k < 3; ++k) {
      const Complex b = k < r.params.betas.size() ? r.params.betas[k] : Complex(NAN, NAN);
      row.push_back(num(b.real()));
      row.push_back(num(b.imag()));
    }
    row.push_back(num(r.params.r));
    row.push_back(num(r.residual));
    row.push_back(num(r.tolerance));
    row.emplace_back(verify::to_string(r.status));
    rep.rows.push_back(std::move(row));
  }
  rep.exit_code = exit_code_of(rep.results);
  rep.wall_time = seconds_since(t0);
  return rep;
}

Report cmd_scan(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  if (cfg.identity.empty()) throw InvalidArgument("scan needs --identity");
  if (cfg.beta_re_grid.empty()) throw InvalidArgument("scan needs --beta-re");
  if (!is_distance_identity(cfg.identity)) (void)verify::default_tolerance(cfg.identity);
  const auto res = parse_grid(cfg.beta_re_grid);
  const auto ims = parse_grid(cfg.beta_im_grid);
  const auto rs = r_values(cfg);

  Report rep;
  rep.config = cfg;
  rep.columns = {"beta_re", "beta_im", "r", "identity", "residual", "skipped"};
  for (double r : rs) {
    for (double im : ims) {
      for (double re : res) {
        const Complex beta(re, im);
        verify::CheckResult cr;
        try {
          cr = scan_point(cfg, cfg.identity, beta, r);
          if (!is_distance_identity(cfg.identity)) {
            const auto it = cfg.tolerances.find(cfg.identity);
            if (it != cfg.tolerances.end() && cr.status != verify::Status::kSkip) {
              cr.tolerance = it->second;
              cr.status = cr.residual <= cr.tolerance ? verify::Status::kPass
                                                      : verify::Status::kFail;
            }
          }
        } catch (const InvalidArgument&) {
          throw;
        } catch (const Error& e) {
          cr.identity_id = cfg.identity;
          cr.params = {{beta}, r, {}, {}, {}};
          cr.residual = 0.0;
          cr.tolerance = is_distance_identity(cfg.identity)
                             ? std::numeric_limits<double>::infinity()
                             : verify::default_tolerance(cfg.identity);
          cr.status = verify::Status::kSkip;
          cr.diagnostics = fmt::format("{}: {}", to_string(e.code()), e.what());
        }
        const bool skipped = cr.status == verify::Status::kSkip;
        json rec = check_json(cr);
        rec["beta"] = complex_json(beta);
        rep.results.push_back(rec);
        rep.rows.push_back({num(re), num(im), num(r), cfg.identity,
                            skipped ? "" : num(cr.residual), skipped ? "1" : "0"});
      }
    }
  }
  rep.exit_code = exit_code_of(rep.results);
  rep.wall_time = seconds_since(t0);
  return rep;
}

Report cmd_product(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  if (cfg.n_list.empty()) throw InvalidArgument("product needs --N");
  const bool scalar = cfg.target == "rhoF";
  if (!scalar && cfg.target != "F") {
    throw InvalidArgument(fmt::format("--target must be rhoF or F, got '{}'", cfg.target));
  }
  const double r = single_r(cfg);
  const DeformationParams p = params_for(cfg, r);
  const SpectralPoint beta(cfg.beta.value_or(Complex(1.0, 0.0)));

  Report rep;
  rep.config = cfg;
  if (scalar) {
    const Complex closed = specfun::log_rho_F(beta, r, cfg.quadrature, cfg.guard);
    rep.extra["closed_form_log"] = complex_json(closed);
    rep.columns = {"N", "slope_re", "slope_im", "partial_re", "partial_im",
                   "extrapolated_re", "extrapolated_im", "error"};
    for (int n : cfg.n_list) {
      const auto run = products::rho_F_product(beta, p, n);
      const double err = std::abs(run.extrapolated_log - closed);
      rep.results.push_back(json{{"N", n},
                                 {"divergence_slope", complex_json(run.divergence_slope)},
                                 {"partial_log", complex_json(run.partial_log)},
                                 {"extrapolated_log", complex_json(run.extrapolated_log)},
                                 {"abs_error", err},
                                 {"status", "pass"}});
      rep.rows.push_back({std::to_string(n), num(run.divergence_slope.real()),
                          num(run.divergence_slope.imag()), num(run.partial_log.real()),
                          num(run.partial_log.imag()), num(run.extrapolated_log.real()),
                          num(run.extrapolated_log.imag()), num(err)});
    }
  } else {
    const CMatrix4 closed = rmat::twist_F_closed(beta, p, cfg.quadrature);
    const auto closed_d = rmat::twist_F_descriptor(beta, p);
    rep.extra["closed_form"] = matrix_json(closed);
    rep.columns = {"N", "scalar_slope_re", "b_plus_slope_re", "b_minus_slope_re",
                   "partial_minus_identity", "descriptor_error", "matrix_error"};
    for (int n : cfg.n_list) {
      const auto run = products::twist_F_product(beta, p, n);
      const auto d = run.extrapolated_descriptor();
      const double d_err = std::max(std::abs(d.b_plus - closed_d.b_plus),
                                    std::abs(d.b_minus - closed_d.b_minus));
      const double m_err = sup_norm(run.extrapolated_matrix - closed);
      const double id_dist = sup_norm(run.partial_matrix - CMatrix4::Identity());
      rep.results.push_back(json{
          {"N", n},
          {"divergence_slope",
           json{{"scalar", complex_json(run.scalar.divergence_slope)},
                {"b_plus", complex_json(run.b_plus.divergence_slope)},
                {"b_minus", complex_json(run.b_minus.divergence_slope)}}},
          {"partial_matrix", matrix_json(run.partial_matrix)},
          {"extrapolated_matrix", matrix_json(run.extrapolated_matrix)},
          {"partial_minus_identity", id_dist},
          {"descriptor_error", d_err},
          {"matrix_error", m_err},
          {"status", "pass"}});
      rep.rows.push_back({std::to_string(n), num(run.scalar.divergence_slope.real()),
                          num(run.b_plus.divergence_slope.real()),
                          num(run.b_minus.divergence_slope.real()), num(id_dist), num(d_err),
                          num(m_err)});
    }
  }
  rep.wall_time = seconds_since(t0);
  return rep;
}

Report cmd_limits(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  if (!cfg.ladder) throw InvalidArgument("limits needs --ladder lo:hi");
  const auto [lo, hi] = *cfg.ladder;
  if (!(lo > 0.0)) throw InvalidArgument("ladder must start above 0");
  std::vector<double> rs;
  for (double r = lo; r <= hi * (1.0 + 1e-12); r *= 2.0) rs.push_back(r);
  if (rs.size() < 2) {
    throw InvalidArgument(fmt::format("ladder {}:{} has fewer than two rungs", lo, hi));
  }
  const SpectralPoint beta(cfg.beta.value_or(Complex(1.0, 0.0)));

  Report rep;
  rep.config = cfg;
  rep.columns = {"r", "f_minus_identity", "v6_minus_dy", "status"};
  std::vector<double> f_dist, v_dist;
  for (double r : rs) {
    const DeformationParams p = params_for(cfg, r);
    json rec{{"r", r}};
    double fd = NAN, vd = NAN;
    try {
      fd = sup_norm(rmat::twist_F_closed(beta, p, cfg.quadrature) - CMatrix4::Identity());
      vd = sup_norm(rmat::r_matrix(rmat::RKind::kV6, beta, p, true, cfg.quadrature) -
                    rmat::r_matrix(rmat::RKind::kDY, beta, p, true, cfg.quadrature));
      rec["f_minus_identity"] = fd;
      rec["v6_minus_dy"] = vd;
      rec["status"] = "pass";
    } catch (const InvalidArgument&) {
      throw;
    } catch (const Error& e) {
      fd = vd = NAN;
      rec["f_minus_identity"] = nullptr;
      rec["v6_minus_dy"] = nullptr;
      rec["status"] = "skip";
      rec["error"] = error_json(e);
    }
    f_dist.push_back(fd);
    v_dist.push_back(vd);
    rep.rows.push_back({num(r), num(fd), num(vd), rec["status"].get<std::string>()});
    rep.results.push_back(rec);
  }
  auto order_json = [](std::optional<double> o) { return o ? json(*o) : json(nullptr); };
  rep.extra["fit"] = json{{"f_minus_identity_order", order_json(decay_order(rs, f_dist))},
                          {"v6_minus_dy_order", order_json(decay_order(rs, v_dist))}};
  rep.wall_time = seconds_since(t0);
  return rep;
}

std::string render(const Report& report, Format format) {
  if (format == Format::kJson) return canonical_dump(report.to_json());
  if (format == Format::kCsv) {
    std::string out = fmt::format("{}\n", fmt::join(report.columns, ","));
    for (const auto& row : report.rows) out += fmt::format("{}\n", fmt::join(row, ","));
    return out;
  }
  std::vector<std::size_t> width(report.columns.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  };
  widen(report.columns);
  for (const auto& row : report.rows) widen(row);
  auto line = [&](const std::vector<std::string>& row) {
    std::string s;
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
      s += fmt::format("{:>{}}  ", row[i], width[i]);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::string out = line(report.columns);
  for (const auto& row : report.rows) out += line(row);
  const auto sum = report.summary();
  out += fmt::format("pass {}  fail {}  skip {}  total {}\n", sum["pass"].get<int>(),
                     sum["fail"].get<int>(), sum["skip"].get<int>(), sum["total"].get<int>());
  for (auto it = report.extra.begin(); it != report.extra.end(); ++it) {
    if (it.key() == "fit") out += fmt::format("fit: {}\n", it.value().dump());
  }
  for (const auto& r : report.results) {
    if (r.contains("error") && r["error"].is_object()) out += fmt::format("error: {}\n", r["error"]["message"].get<std::string>());
  }
  return out;
}

}  // namespace dytwist::cli
