// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion with the measured values
// and the wall time. Exit status is nonzero when a criterion fails, unless it
// is listed in --known-failures (comma-separated numbers); a listed criterion
// that passes is reported but does not change the status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ultrabound/conjugate.hpp"
#include "ultrabound/fit.hpp"
#include "ultrabound/function_spec.hpp"
#include "ultrabound/ode_bounds.hpp"
#include "ultrabound/pipeline.hpp"
#include "ultrabound/sampled_curve.hpp"
#include "ultrabound/speclab.hpp"
#include "ultrabound/torus.hpp"
#include "ultrabound/transforms.hpp"

namespace ub = ultrabound;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return ub::fit_line(lx, ly).slope;
}

Outcome c1_m_eta() {
  const auto t = ub::log_grid(1e-2, 1e2, 64);
  double worst = 0;
  for (auto [c, a] : {std::pair{1.0, 0.5}, {2.0, 1.0}, {1.0, 2.0}}) {
    const double eta = a + 0.5;
    const auto r = ub::transforms::m_eta([=](double s) { return c * std::pow(s, -a); }, eta, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      worst = std::max(worst, std::abs(r.curve.values()[i] / oracle::m_eta_power(c, a, eta, t[i]) - 1));
    }
  }
  return {worst <= 1e-6, fmt("max rel err %.2e (tol 1e-6)", worst)};
}

Outcome c2_divergence() {
  const ub::FunctionSpec de(ub::DoubleExp{1, 1, 1});
  const auto t = ub::transforms::default_t_grid();
  std::string d;
  bool pass = true;
  for (double eta : {0.0, 1.0, 5.0}) {
    const auto r = ub::transforms::m_eta(ub::as_function(de), eta, t);
    pass = pass && r.report.divergent_count() == t.size();
    d += fmt("eta=%g %zu/%zu ", eta, r.report.divergent_count(), t.size());
  }
  return {pass, d + "flagged"};
}

Outcome c3_one_exp() {
  const auto x = ub::log_grid(10, 1e4, 40);
  bool pass = true;
  std::string d;
  for (double g : {0.5, 1.0, 2.0}) {
    const ub::FunctionSpec a(ub::PolyExp{1, 0, 0, 1, g});
    const auto r = ub::conjugate::d_transform(ub::half_log(a), x);
    const double s = loglog_slope(x, r.curve.values());
    const double target = 1 + 1 / g;
    pass = pass && std::abs(s / target - 1) <= 0.02;
    d += fmt("gamma=%g slope %.6f (target %g) ", g, s, target);
  }
  return {pass, d + "tol 2%"};
}

Outcome c4_coulhon() {
  const auto t = ub::log_grid(1e-3, 1.0, 40);
  bool pass = true;
  std::string d;
  for (double n : {2.0, 4.0}) {
    const auto r = ub::transforms::coulhon_invert_log([=](double u) { return (2 / n) * u; }, 0.0, t);
    const double s = loglog_slope(t, r.curve.values());
    pass = pass && std::abs(s / (-n / 2) - 1) <= 0.01;
    d += fmt("n=%g slope %.9f ", n, s);
  }
  return {pass, d + "tol 1%"};
}

std::vector<std::pair<const char*, ub::ScalarFn>> ode_family() {
  return {{"1", [](double) { return 1.0; }},
          {"t", [](double t) { return t; }},
          {"1+t^-1/2", [](double t) { return 1 + 1 / std::sqrt(t); }}};
}

Outcome c5_identity() {
  const auto g = ub::log_grid(0.1, 10, 41);
  double worst = 0;
  for (auto& [name, b] : ode_family()) {
    for (double eta : {0.0, 1.0, 3.0}) worst = std::max(worst, ub::ode_bounds::verify_h_identity(b, eta, g).max_residual);
  }
  return {worst < 1e-8, fmt("max residual %.2e over 9 configurations (tol 1e-8)", worst)};
}

Outcome c6_universal() {
  const auto grid = ub::log_grid(1e-3, 20, 97);
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_ratio = 0;
  for (auto& [name, b] : ode_family()) {
    for (double eta : {0.0, 1.0, 3.0}) {
      const double lambda = (eta + 1) / 2;
      const auto e = ub::ode_bounds::draw_ensemble(b, lambda, 100, 0.1, 10, 42);
      const auto r = ub::ode_bounds::universal_bound_check(b, eta, lambda, e.members, grid, 1e-6);
      checked += r.checked;
      violations += r.violations.size();
      max_ratio = std::max(max_ratio, r.max_ratio);
    }
  }
  return {violations == 0 && checked == 900,
          fmt("%zu trajectories, %zu violations, max Phi/H %.9f", checked, violations, max_ratio)};
}

Outcome c7_double_exp() {
  const auto d = ub::ode_bounds::double_exp_bound(1, 1, 0.5);
  bool pass = d.k1 == 2.0 && d.k2 == 1.0 && d.alpha == 1.0;
  std::string s = fmt("(k1,k2,alpha)=(%g,%g,%g) ", d.k1, d.k2, d.alpha);
  const auto r = ub::ode_bounds::double_exp_check(d, ub::log_grid(0.2, 5, 61), 100, 7);
  pass = pass && r.passed();
  s += fmt("%zu trajectories, %zu above 2e^(1/t); ", r.checked, r.violations.size());
  for (double g : {1.0 / 3, 0.5, 2.0 / 3}) {
    const auto dg = ub::ode_bounds::double_exp_bound(1, 1, g);
    const auto rg = ub::ode_bounds::double_exp_check(dg, ub::log_grid(0.2, 5, 61), 100, 7);
    const double target = g / (1 - g);
    pass = pass && rg.passed() && std::abs(rg.fitted_alpha / target - 1) <= 0.05;
    s += fmt("gamma=%.3f alpha fit %.5f (target %.5f) ", g, rg.fitted_alpha, target);
  }
  return {pass, s};
}

Outcome c8_theta() {
  double worst = 0;
  for (double s : ub::log_grid(0.05, 5, 400)) {
    worst = std::max(worst, std::abs(ub::torus::theta_direct(s) / ub::torus::theta_poisson(s) - 1));
  }
  const double t1 = ub::torus::theta(1.0);
  const double naive = static_cast<double>(oracle::theta_naive(1.0L));
  const bool pass = worst <= 1e-12 && std::abs(t1 - 1.7726372) <= 1e-6 && std::abs(t1 - naive) <= 1e-15;
  return {pass, fmt("direct/Poisson max rel diff %.2e; theta(1)=%.10f (naive sum %.10f)", worst, t1, naive)};
}

Outcome c9_one_exp_torus() {
  const auto t = ub::log_grid(0.01, 0.3, 16);
  bool pass = true;
  std::string d;
  for (double a : {0.5, 1.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = ub::torus::exponent_fit(ub::torus::CoefficientSequence(ub::torus::Power{a}), t,
                                           ub::torus::FitMode::single_log);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = std::abs(f.estimate / a - 1) <= 0.10 && secs < 30;
    pass = pass && ok;
    d += fmt("alpha=%g fit %.4f (%s, %zu pts, %.2fs) ", a, f.estimate, ok ? "ok" : "out of 10%", f.points_used, secs);
  }
  return {pass, d};
}

Outcome c10_double_exp_torus() {
  const auto t = ub::log_grid(0.02, 0.1, 16);
  const auto f = ub::torus::exponent_fit(ub::torus::CoefficientSequence(ub::torus::LogPower{1}), t,
                                         ub::torus::FitMode::double_log);
  return {std::abs(f.estimate - 1) <= 0.15,
          fmt("gamma=1 fit %.4f over %zu pts (tol 15%%)", f.estimate, f.points_used)};
}

Outcome c11_inequalities() {
  namespace sl = ub::speclab;
  const std::vector<double> w{1, 4};
  const auto tg = ub::log_grid(0.01, 10, 25);
  ub::ScalarFn a = [&](double t) { return sl::kernel_at_origin(w, t); };
  ub::ScalarFn beta = [&](double t) { return 0.5 * sl::log_kernel_at_origin(w, t); };
  const auto nash = sl::nash_function(w);
  double wj = INFINITY, wsp = INFINITY, wn = INFINITY, wl = INFINITY, wt = INFINITY;
  std::size_t skipped = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto f = sl::make_nonneg(sl::sample_seed(0, i), 2, 3, w);
    const auto g = sl::normalize_l1(f);
    wj = std::min(wj, sl::check_jensen(g));
    wsp = std::min(wsp, sl::check_super_poincare(g, a, tg).worst);
    const auto n = sl::check_nash(g, nash);
    if (n.skipped) {
      ++skipped;
    } else {
      wn = std::min(wn, n.margin);
    }
    wl = std::min(wl, sl::check_lsiwp(f, beta, tg).worst);
    wt = std::min(wt, sl::truncation_sum_check(f).margin);
  }
  const double worst = std::min({wj, wsp, wn, wl, wt});
  return {worst >= -1e-8 && skipped == 0,
          fmt("worst margins jensen %.3g superpoincare %.3g nash %.3g (%zu skipped) lsiwp %.3g truncation %.3g",
              wj, wsp, wn, skipped, wl, wt)};
}

Outcome c12_pipeline() {
  bool pass = true;
  std::string d;
  for (double g : {0.5, 1.0}) {
    const auto c = ub::pipeline::beta_to_m([=](double t) { return std::pow(t, -g); }, ub::log_grid(0.01, 1, 16));
    pass = pass && std::abs(c.slope.slope / -g - 1) <= 0.05;
    d += fmt("gamma=%g slope %.6f ", g, c.slope.slope);
  }
  return {pass, d + "tol 5%"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--known-failures=", 0) == 0) {
      std::stringstream ss(arg.substr(17));
      std::string item;
      while (std::getline(ss, item, ',')) known.insert(std::stoi(item));
    } else {
      std::fprintf(stderr, "usage: %s [--known-failures=N,M,...]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> all{
      {1, "M_eta polynomial closed form", 5, c1_m_eta},
      {2, "divergence detection", 0, c2_divergence},
      {3, "one-exponential conjugate exponent", 0, c3_one_exp},
      {4, "Coulhon inversion, classical Nash", 0, c4_coulhon},
      {5, "ODE identity residual", 0, c5_identity},
      {6, "universal bound", 0, c6_universal},
      {7, "double-exponential lemma", 0, c7_double_exp},
      {8, "theta cross-check", 0, c8_theta},
      {9, "torus one-exponential exponent", 60, c9_one_exp_torus},
      {10, "torus double-exponential exponent", 60, c10_double_exp_torus},
      {11, "inequality property suite", 180, c11_inequalities},
      {12, "pipeline closure", 0, c12_pipeline},
  };
  int unexpected = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += fmt(" [over the %.0f s budget]", c.budget_s);
    }
    const bool is_known = known.count(c.id) > 0;
    std::printf("%s criterion %2d  %-36s %7.2fs  %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str(), !o.pass && is_known ? "  [known failure]" : "");
    std::fflush(stdout);
    if (!o.pass && !is_known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
