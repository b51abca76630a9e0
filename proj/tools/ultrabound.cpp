// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// ultrabound: command-line front end. One subcommand per module plus a
// pipeline that composes them. Output files echo the full configuration and
// the library version in a header block; identical configurations give
// identical files.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ultrabound/conjugate.hpp"
#include "ultrabound/error.hpp"
#include "ultrabound/io.hpp"
#include "ultrabound/ode_bounds.hpp"
#include "ultrabound/pipeline.hpp"
#include "ultrabound/speclab.hpp"
#include "ultrabound/torus.hpp"
#include "ultrabound/transforms.hpp"
#include "ultrabound/version.hpp"

namespace ub = ultrabound;
using ub::io::Json;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

// A table of rows plus a summary; written as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  Json summary = Json::object();

  void add(std::vector<Json> row) { rows.push_back(std::move(row)); }
};

std::string cell(const Json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number()) return ub::io::format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out = "-";
  std::string format = "csv";
};

void write(const Table& t, const Json& config, const Globals& g) {
  std::ostringstream os;
  if (g.format == "json") {
    Json doc;
    doc["version"] = ub::kVersion;
    doc["config"] = config;
    doc["summary"] = t.summary;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json o;
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
      rows.push_back(std::move(o));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
  } else {
    os << "# ultrabound " << ub::kVersion << '\n';
    os << "# config " << config.dump() << '\n';
    for (const auto& [k, v] : t.summary.items()) os << "# " << k << " " << cell(v) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
      os << '\n';
    }
  }
  if (g.out == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + g.out + "'");
    f << os.str();
  }
}

// Every long option of the app and the selected subcommand, as given or
// defaulted.
Json echo_config(const CLI::App& app, const CLI::App& sub) {
  Json j;
  j["command"] = sub.get_name();
  auto collect = [&](const CLI::App& a) {
    for (const CLI::Option* o : a.get_options()) {
      if (o->get_lnames().empty()) continue;
      const std::string name = o->get_lnames().front();
      if (name == "help" || name == "config" || name == "version" || name == "out") continue;
      if (o->get_items_expected_max() == 0) {
        j[name] = o->count() > 0;
      } else if (o->count() > 0) {
        const auto& r = o->results();
        j[name] = r.size() == 1 ? r.front() : CLI::detail::join(r, ",");
      } else if (o->get_default_str().empty()) {
        j[name] = nullptr;
      } else {
        j[name] = o->get_default_str();
      }
    }
  };
  collect(app);
  collect(sub);
  return j;
}

ub::FunctionSpec load_spec(const std::string& path) { return ub::io::load_function_spec(path); }

std::vector<double> grid_points(const std::string& text) {
  return ub::io::parse_grid(text).points();
}

const ub::PolyExp& require_poly_exp(const ub::FunctionSpec& s, const char* what) {
  const auto* p = std::get_if<ub::PolyExp>(&s.family());
  if (!p) throw UsageError(std::string(what) + ": input must be a poly_exp spec");
  return *p;
}

// ---------------------------------------------------------------- conjugate

struct ConjugateArgs {
  std::string input;
  std::string kind;
  std::string grid;
  std::string ygrid = "-20:200:2201:lin";
};

Table run_conjugate(const ConjugateArgs& a) {
  const ub::FunctionSpec spec = load_spec(a.input);
  const auto grid = grid_points(a.grid);
  const bool is_a = spec.role() == ub::Role::ultrabound_a;
  Table t;
  t.columns = {"x", "value", "argmax", "divergent"};
  auto emit = [&](const ub::conjugate::ConjugateResult& r,
                  const std::function<double(double)>* reference) {
    if (reference) t.columns.push_back("reference");
    std::size_t div = 0;
    for (std::size_t i = 0; i < r.curve.size(); ++i) {
      const double v = r.curve.values()[i];
      const bool d = !std::isfinite(v);
      div += d;
      std::vector<Json> row{num(r.curve.abscissae()[i]), num(v), num(r.argmax.values()[i]), d};
      if (reference) row.push_back(num((*reference)(r.curve.abscissae()[i])));
      t.add(std::move(row));
    }
    t.summary["divergent_points"] = div;
    t.summary["hypotheses_verified"] = r.hypotheses.verified();
  };

  if (a.kind == "lambda") {
    emit(ub::conjugate::lambda_from_beta(ub::as_function(spec), grid), nullptr);
  } else if (a.kind == "n") {
    const auto lam = ub::conjugate::lambda_from_beta(ub::as_function(spec), grid_points(a.ygrid));
    emit(ub::conjugate::n_from_lambda(lam.curve, grid), nullptr);
  } else if (a.kind == "A") {
    // b(s) = s a(1/s) when the input is the bound a itself.
    emit(ub::conjugate::b_case_transform(ub::conjugate::NashCase::A, ub::as_function(spec), grid),
         nullptr);
  } else if (a.kind == "B") {
    const ub::ScalarFn b1 = is_a ? ub::half_log(spec) : ub::as_function(spec);
    emit(ub::conjugate::b_case_transform(ub::conjugate::NashCase::B, b1, grid), nullptr);
  } else if (a.kind == "one-exp") {
    const auto& p = require_poly_exp(spec, "one-exp");
    if (p.lambda != 0.0 || p.d != 0.0 || !(p.gamma > 0.0)) {
      throw UsageError("one-exp: input must be c1 exp(c / t^gamma) (lambda = d = 0, gamma > 0)");
    }
    const auto cf = ub::conjugate::one_exp_closed_form(p.c1, p.c, p.gamma);
    const std::function<double(double)> ref = [cf](double x) { return cf.B(x); };
    emit(ub::conjugate::b_case_transform(ub::conjugate::NashCase::B, ub::half_log(spec), grid),
         &ref);
    t.summary["exponent"] = cf.exponent();
  } else {
    const auto& p = require_poly_exp(spec, "weak-sobolev");
    if (p.lambda != 0.0 || p.c != 0.0 || !(p.d > 0.0)) {
      throw UsageError("weak-sobolev: input must be c1 t^(-n/2) (lambda = c = 0, d > 0)");
    }
    const auto ws = ub::conjugate::weak_sobolev_D(2.0 * p.d, p.c1);
    const std::function<double(double)> ref = [ws](double y) { return ws.D(y); };
    emit(ub::conjugate::d_transform(ub::half_log(spec), grid), &ref);
    t.summary["c_prime"] = ws.c_prime;
  }
  return t;
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
  std::string op;
  std::string input;
  double eta = 0.0;
  std::optional<double> lambda;
  std::string grid;
  double x_lo = 0.0;
};

Table transform_table(const ub::transforms::TransformResult& r) {
  Table t;
  t.columns = {"x", "value", "error", "status"};
  for (const auto& p : r.report.points) {
    t.add({num(p.x), num(p.value), num(p.error), std::string(ub::transforms::to_string(p.status))});
  }
  t.summary["operation"] = r.report.operation;
  t.summary["localized"] = r.report.localized;
  t.summary["divergent_points"] = r.report.divergent_count();
  return t;
}

// Whole-curve divergence of an inversion: every row is flagged.
Table divergent_table(std::span<const double> grid, const std::string& reason) {
  Table t;
  t.columns = {"x", "value", "error", "status"};
  for (double x : grid) t.add({num(x), num(INFINITY), num(INFINITY), "divergent_tail"});
  t.summary["divergent_points"] = grid.size();
  t.summary["reason"] = reason;
  return t;
}

Table run_transform(const TransformArgs& a, const Globals& g) {
  const ub::FunctionSpec spec = load_spec(a.input);
  const auto grid = grid_points(a.grid);
  ub::quad::TailOptions qopts;
  if (g.tol) qopts.panel.rel_tol = *g.tol;
  ub::transforms::InvertOptions iopts;
  if (g.tol) iopts.quad.rel_tol = *g.tol;
  try {
    if (a.op == "meta") {
      return transform_table(
          ub::transforms::m_eta(ub::as_function(spec), a.eta, grid, qopts, spec.describe()));
    }
    if (a.op == "h") {
      const double lambda = a.lambda.value_or((a.eta + 1.0) / 2.0);
      return transform_table(ub::transforms::h_transform(ub::as_function(spec), a.eta, lambda,
                                                         grid, qopts, spec.describe()));
    }
    if (a.op == "coulhon") {
      auto ratio = [spec](double u) { return spec.log_at_log(u) - u; };
      return transform_table(
          ub::transforms::coulhon_invert_log(ratio, a.x_lo, grid, iopts, spec.describe()));
    }
    if (a.x_lo < 0.0) throw UsageError("ultrabound: B is read from a spec of positive y; need x-lo >= 0");
    auto log_b = [spec](double y) { return spec.log(y); };
    return transform_table(
        ub::transforms::ultrabound_from_log_B(log_b, a.x_lo, grid, iopts, spec.describe()));
  } catch (const ub::DivergenceError& e) {
    return divergent_table(grid, e.what());
  }
}

// ---------------------------------------------------------------- odecheck

struct OdeArgs {
  std::string b;
  double eta = 0.0;
  std::optional<double> lambda;
  std::size_t ensemble = 100;
  std::string grid = "0.001:20:97";
  double s0_lo = 0.1;
  double s0_hi = 10.0;
  bool double_exp = false;
};

Table run_odecheck(const OdeArgs& a, const Globals& g) {
  const ub::FunctionSpec spec = load_spec(a.b);
  const auto grid = grid_points(a.grid);
  Table t;
  t.columns = {"s0", "phi0", "t", "phi", "bound"};
  auto violations = [&](const std::vector<ub::ode_bounds::Violation>& vs) {
    for (const auto& v : vs) {
      t.add({num(v.member.s0), num(v.member.phi0), num(v.t), num(v.phi), num(v.bound)});
    }
  };
  if (a.double_exp) {
    const auto& p = require_poly_exp(spec, "double-exp check");
    if (p.lambda != 0.0 || p.d != 0.0) {
      throw UsageError("double-exp check: b must be c1 exp(c2 / t^gamma)");
    }
    const auto bound = ub::ode_bounds::double_exp_bound(p.c1, p.c, p.gamma);
    const auto r = ub::ode_bounds::double_exp_check(bound, grid, a.ensemble, g.seed,
                                                    g.tol.value_or(1e-9));
    t.summary["k1"] = num(bound.k1);
    t.summary["k2"] = num(bound.k2);
    t.summary["alpha"] = num(bound.alpha);
    t.summary["checked"] = r.checked;
    t.summary["rejected"] = r.rejected;
    t.summary["max_ratio"] = num(r.max_ratio);
    t.summary["fitted_alpha"] = num(r.fitted_alpha);
    t.summary["passed"] = r.passed();
    violations(r.violations);
    return t;
  }
  const double lambda = a.lambda.value_or((a.eta + 1.0) / 2.0);
  const ub::ScalarFn b = ub::as_function(spec);
  const auto ens =
      ub::ode_bounds::draw_ensemble(b, lambda, a.ensemble, a.s0_lo, a.s0_hi, g.seed);
  const auto r = ub::ode_bounds::universal_bound_check(b, a.eta, lambda, ens.members, grid,
                                                       g.tol.value_or(1e-6));
  t.summary["lambda"] = num(lambda);
  t.summary["checked"] = r.checked;
  t.summary["rejected_draws"] = ens.rejected.size();
  t.summary["skipped_negative"] = r.skipped_negative;
  t.summary["truncated"] = r.truncated;
  t.summary["nonnegative_only"] = r.nonnegative_only;
  t.summary["max_ratio"] = num(r.max_ratio);
  t.summary["passed"] = r.passed();
  violations(r.violations);
  return t;
}

// ---------------------------------------------------------------- torus

struct TorusArgs {
  std::string sequence;
  std::string tgrid;
  std::string fit = "none";
};

Table run_torus(const TorusArgs& a, const Globals& g) {
  const auto seq = ub::io::parse_sequence(a.sequence);
  const auto grid = grid_points(a.tgrid);
  ub::torus::KernelOptions opts;
  if (g.tol) opts.tol = *g.tol;
  Table t;
  t.columns = {"t", "log_kernel", "K", "tail_bound", "euler_maclaurin", "status"};
  std::size_t div = 0;
  for (double x : grid) {
    try {
      const auto ev = ub::torus::product_kernel(seq, x, opts);
      t.add({num(x), num(ev.log_value), ev.K, num(ev.tail_bound), ev.euler_maclaurin, "ok"});
    } catch (const ub::DivergenceError&) {
      ++div;
      t.add({num(x), num(INFINITY), 0, num(INFINITY), false, "divergent"});
    }
  }
  t.summary["sequence"] = seq.describe();
  t.summary["divergent_points"] = div;
  if (a.fit != "none") {
    if (div > 0) {
      t.summary["fit"] = "skipped: divergent points on the grid";
    } else {
      const auto mode =
          a.fit == "single" ? ub::torus::FitMode::single_log : ub::torus::FitMode::double_log;
      const auto f = ub::torus::exponent_fit(seq, grid, mode, opts);
      t.summary["fit"] = a.fit;
      t.summary["fit_estimate"] = num(f.estimate);
      t.summary["fit_prefactor"] = num(f.prefactor);
      t.summary["fit_residual"] = num(f.residual);
      t.summary["fit_points_used"] = f.points_used;
      t.summary["fit_discarded_large_t"] = f.discarded_large_t;
    }
  }
  return t;
}

// ---------------------------------------------------------------- lab

struct LabArgs {
  std::string check;
  int dim = 2;
  int degree = 3;
  std::string weights = "1,4";
  std::size_t samples = 100;
  std::string tgrid = "0.01:10:25";
  std::string d_source = "kernel";
  double t_max = 1.0;
};

Table run_lab(const LabArgs& a, const Globals& g) {
  namespace sl = ub::speclab;
  std::vector<double> w = ub::io::parse_list(a.weights);
  if (static_cast<int>(w.size()) != a.dim) throw UsageError("lab: need one weight per dimension");
  if (a.samples == 0) throw UsageError("lab: need at least one sample");
  const double threshold = g.tol.value_or(1e-8);
  const auto tg = grid_points(a.tgrid);

  ub::ScalarFn kernel = [w](double t) { return sl::kernel_at_origin(w, t); };
  ub::ScalarFn beta = [w](double t) { return 0.5 * sl::log_kernel_at_origin(w, t); };
  ub::ScalarFn nash;
  ub::ScalarFn d_eval;
  double y_min = -std::numeric_limits<double>::infinity();
  if (a.check == "nash") nash = sl::nash_function(w);
  if (a.check == "betnash") {
    if (a.d_source == "surrogate") {
      const auto s = sl::polynomial_surrogate(w, a.t_max);
      d_eval = s.D;
      y_min = s.y_min;
    } else {
      d_eval = ub::conjugate::d_evaluator(beta);
    }
  }

  Table t;
  t.columns = {"sample", "margin", "at", "skipped"};
  double worst = std::numeric_limits<double>::infinity();
  std::size_t failures = 0;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < a.samples; ++i) {
    const sl::TrigPoly f = sl::make_nonneg(sl::sample_seed(g.seed, i), a.dim, a.degree, w);
    double margin = 0.0;
    double at = 0.0;
    bool skip = false;
    if (a.check == "jensen") {
      margin = sl::check_jensen(sl::normalize_l1(f));
    } else if (a.check == "superpoincare") {
      const auto s = sl::check_super_poincare(sl::normalize_l1(f), kernel, tg);
      margin = s.worst;
      at = s.worst_at;
    } else if (a.check == "lsiwp") {
      const auto s = sl::check_lsiwp(f, beta, tg);
      margin = s.worst;
      at = s.worst_at;
    } else if (a.check == "nash") {
      const auto p = sl::check_nash(sl::normalize_l1(f), nash);
      margin = p.margin;
      at = p.at;
      skip = p.skipped;
    } else if (a.check == "truncation") {
      const auto c = sl::truncation_sum_check(f);
      margin = c.margin;
      at = c.pieces;
    } else {
      const auto p = sl::check_betnash(sl::normalize_l2(f), d_eval, y_min);
      margin = p.margin;
      at = p.at;
      skip = p.skipped;
    }
    if (skip) {
      ++skipped;
    } else {
      worst = std::min(worst, margin);
      failures += margin < -threshold;
    }
    t.add({i, num(margin), num(at), skip});
  }
  t.summary["check"] = a.check;
  t.summary["threshold"] = num(-threshold);
  t.summary["worst_margin"] = num(worst);
  t.summary["failures"] = failures;
  t.summary["skipped"] = skipped;
  t.summary["passed"] = failures == 0;
  return t;
}

// ---------------------------------------------------------------- pipeline

struct PipelineArgs {
  std::string beta;
  std::string grid = "0.01:1:16";
  std::string ygrid = "-5:200:4097:lin";
};

Table run_pipeline(const PipelineArgs& a, const Globals& g) {
  const ub::FunctionSpec spec = load_spec(a.beta);
  const auto grid = grid_points(a.grid);
  const ub::ScalarFn beta = ub::as_function(spec);
  const auto rt = ub::pipeline::beta_round_trip(beta, grid, grid_points(a.ygrid));
  ub::transforms::InvertOptions iopts;
  if (g.tol) iopts.quad.rel_tol = *g.tol;
  Table t;
  t.columns = {"t", "beta", "beta_round_trip", "rel_diff", "M", "M_error", "M_status"};
  std::optional<ub::pipeline::Closure> closure;
  std::string reason;
  try {
    closure = ub::pipeline::beta_to_m(beta, grid, iopts);
  } catch (const ub::DivergenceError& e) {
    reason = e.what();
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Json> row{num(grid[i]), num(rt.beta_in[i]), num(rt.beta_out[i]),
                          num(rt.rel_diff[i])};
    if (closure) {
      const auto& p = closure->m.report.points[i];
      row.insert(row.end(), {num(p.value), num(p.error),
                             std::string(ub::transforms::to_string(p.status))});
    } else {
      row.insert(row.end(), {num(INFINITY), num(INFINITY), "divergent_tail"});
    }
    t.add(std::move(row));
  }
  t.summary["round_trip_max_rel_diff"] = num(rt.max_rel_diff);
  if (closure) {
    t.summary["m_loglog_slope"] = num(closure->slope.slope);
    t.summary["m_loglog_rms"] = num(closure->slope.rms);
  } else {
    t.summary["m_divergent"] = reason;
  }
  return t;
}

// JSON configs become an argument list: {"command": "torus", "tgrid": ...}.
std::vector<std::string> expand_json_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    std::size_t erase = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      erase = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      erase = 1;
    }
    if (path.size() < 5 || path.substr(path.size() - 5) != ".json") continue;
    Json j;
    try {
      j = Json::parse(ub::io::read_file(path));
    } catch (const Json::parse_error& e) {
      throw UsageError("config '" + path + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("command") || !j.at("command").is_string()) {
      throw UsageError("config '" + path + "': expected an object with a string 'command'");
    }
    std::vector<std::string> expanded{args[0], j.at("command").get<std::string>()};
    for (const auto& [k, v] : j.items()) {
      if (k == "command") continue;
      if (v.is_boolean()) {
        if (v.get<bool>()) expanded.push_back("--" + k);
        continue;
      }
      expanded.push_back("--" + k);
      expanded.push_back(v.is_string() ? v.get<std::string>() : cell(v));
    }
    args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i + erase));
    expanded.insert(expanded.end(), args.begin() + 1, args.end());
    return expanded;
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultrabound: ultracontractive bounds, Nash and log-Sobolev transforms"};
  app.set_version_flag("--version", std::string(ub::kVersion));
  app.set_config("--config", "", "TOML or JSON configuration file");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance (meaning depends on the command)");
  app.add_option("--out", g.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  ConjugateArgs ca;
  auto* conj = app.add_subcommand("conjugate", "Legendre-type sup transforms");
  conj->add_option("--input", ca.input, "Function spec (JSON)")->required();
  conj->add_option("--case", ca.kind, "Transform")
      ->check(CLI::IsMember({"lambda", "n", "A", "B", "one-exp", "weak-sobolev"}))
      ->required();
  conj->add_option("--grid", ca.grid, "lo:hi:n[:lin|log]")->required();
  conj->add_option("--ygrid", ca.ygrid, "Tabulation grid of Lambda for case n")
      ->capture_default_str();

  TransformArgs ta;
  auto* tran = app.add_subcommand("transform", "M_eta, H, Coulhon and tail inversions");
  tran->add_option("--op", ta.op, "Operation")
      ->check(CLI::IsMember({"meta", "h", "coulhon", "ultrabound"}))
      ->required();
  tran->add_option("--input", ta.input, "Function spec (JSON)")->required();
  tran->add_option("--eta", ta.eta, "eta > -1")->capture_default_str();
  tran->add_option("--lambda", ta.lambda, "lambda for op h (default (eta+1)/2)");
  tran->add_option("--grid", ta.grid, "lo:hi:n[:lin|log]")->required();
  tran->add_option("--x-lo", ta.x_lo, "Lower end of the positivity interval for inversions")
      ->capture_default_str();

  OdeArgs oa;
  auto* ode = app.add_subcommand("odecheck", "Universal bounds on equality-ODE ensembles");
  ode->add_option("--b", oa.b, "Function spec of b (JSON)")->required();
  ode->add_option("--eta", oa.eta, "eta > -1")->capture_default_str();
  ode->add_option("--lambda", oa.lambda, "lambda (default (eta+1)/2)");
  ode->add_option("--ensemble", oa.ensemble, "Trajectories")->capture_default_str();
  ode->add_option("--grid", oa.grid, "Common grid lo:hi:n")->capture_default_str();
  ode->add_option("--s0-lo", oa.s0_lo, "Lower end of the s0 draw")->capture_default_str();
  ode->add_option("--s0-hi", oa.s0_hi, "Upper end of the s0 draw")->capture_default_str();
  ode->add_flag("--double-exp", oa.double_exp, "Check the double-exponential bound instead");

  TorusArgs tt;
  auto* tor = app.add_subcommand("torus", "Product heat kernel on the infinite torus");
  tor->add_option("--sequence", tt.sequence, "power:ALPHA | logpower:GAMMA | file.json")
      ->required();
  tor->add_option("--tgrid", tt.tgrid, "lo:hi:n[:lin|log]")->required();
  tor->add_option("--fit", tt.fit, "Exponent fit")
      ->check(CLI::IsMember({"none", "single", "double"}))
      ->capture_default_str();

  LabArgs la;
  auto* lab = app.add_subcommand("lab", "Inequality checks on random trigonometric polynomials");
  lab->add_option("--check", la.check, "Inequality")
      ->check(CLI::IsMember({"jensen", "superpoincare", "nash", "lsiwp", "truncation", "betnash"}))
      ->required();
  lab->add_option("--dim", la.dim, "Torus dimension")->check(CLI::Range(1, 3))->capture_default_str();
  lab->add_option("--degree", la.degree, "Degree of the random factor p")
      ->check(CLI::Range(0, 16))
      ->capture_default_str();
  lab->add_option("--weights", la.weights, "w1,w2,...")->capture_default_str();
  lab->add_option("--samples", la.samples, "Number of samples")->capture_default_str();
  lab->add_option("--tgrid", la.tgrid, "t grid for superpoincare and lsiwp")->capture_default_str();
  lab->add_option("--d-source", la.d_source, "D for betnash")
      ->check(CLI::IsMember({"kernel", "surrogate"}))
      ->capture_default_str();
  lab->add_option("--t-max", la.t_max, "Validity window of the polynomial surrogate")
      ->capture_default_str();

  PipelineArgs pa;
  auto* pipe = app.add_subcommand("pipeline", "beta -> Lambda -> N -> beta and beta -> Lambda -> M");
  pipe->add_option("--beta", pa.beta, "Function spec of beta (JSON)")->required();
  pipe->add_option("--grid", pa.grid, "t grid lo:hi:n")->capture_default_str();
  pipe->add_option("--ygrid", pa.ygrid, "Tabulation grid of Lambda")->capture_default_str();

  for (CLI::App* sub : {conj, tran, ode, tor, lab, pipe}) sub->configurable();

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_json_config(std::move(args));
    std::vector<const char*> cargs;
    for (const auto& s : args) cargs.push_back(s.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "ultrabound: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const Json config = echo_config(app, *sub);
    Table t;
    if (sub == conj) {
      t = run_conjugate(ca);
    } else if (sub == tran) {
      t = run_transform(ta, g);
    } else if (sub == ode) {
      t = run_odecheck(oa, g);
    } else if (sub == tor) {
      t = run_torus(tt, g);
    } else if (sub == lab) {
      t = run_lab(la, g);
    } else {
      t = run_pipeline(pa, g);
    }
    write(t, config, g);
  } catch (const UsageError& e) {
    std::cerr << "ultrabound: " << e.what() << '\n';
    return kUsage;
  } catch (const ub::DomainError& e) {
    std::cerr << "ultrabound: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "ultrabound: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
