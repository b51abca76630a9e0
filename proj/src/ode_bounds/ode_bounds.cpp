// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include "ultrabound/ode_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ultrabound/error.hpp"
#include "ultrabound/fit.hpp"
#include "ultrabound/transforms.hpp"

namespace ultrabound::ode_bounds {
namespace {

void require_grid(std::span<const double> grid, const char* op) {
  if (grid.empty()) throw DomainError(std::string(op) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError(std::string(op) + ": grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(op) + ": grid must be strictly increasing");
    }
  }
}

// Integrates dPhi/dsigma = rhs(sigma, Phi) from (log s0, phi0) through every
// grid point; the small-s side may stop early.
OdeSolution solve_in_log(const ode::Rhs& rhs, double s0, double phi0,
                         std::span<const double> grid, const ode::Rk4Options& opts) {
  require_grid(grid, "ode solve");
  if (!(s0 > 0.0)) throw DomainError("ode solve: s0 must be positive");
  if (!std::isfinite(phi0)) throw DomainError("ode solve: phi0 must be finite");
  const double sigma0 = std::log(s0);
  std::vector<double> back_targets;
  std::vector<double> fwd_targets;
  for (std::size_t i = grid.size(); i-- > 0;) {
    if (grid[i] < s0) back_targets.push_back(std::log(grid[i]));
  }
  for (double s : grid) {
    if (s >= s0) fwd_targets.push_back(std::log(s));
  }
  const ode::Rk4Sweep back = ode::rk4_sweep(rhs, sigma0, phi0, back_targets, opts);
  const ode::Rk4Sweep fwd = ode::rk4_sweep(rhs, sigma0, phi0, fwd_targets, opts);
  if (fwd.underflow) {
    throw DomainError("ode solve: step-size underflow on the forward sweep");
  }

  OdeSolution out;
  out.s0 = s0;
  out.phi0 = phi0;
  out.truncated = back.underflow;
  std::vector<double> s;
  std::vector<double> phi;
  for (std::size_t k = back.reached; k-- > 0;) {
    s.push_back(std::exp(back_targets[k]));
    phi.push_back(back.values[k]);
  }
  for (std::size_t k = 0; k < fwd.reached; ++k) {
    s.push_back(std::exp(fwd_targets[k]));
    phi.push_back(fwd.values[k]);
  }
  // Use the grid's own abscissae, not exp(log(s)).
  const std::size_t offset = grid.size() - s.size();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = grid[offset + i];
  for (double v : phi) {
    if (!std::isfinite(v)) throw DomainError("ode solve: solution left the finite range");
  }
  out.curve = SampledCurve(std::move(s), std::move(phi), Interp::linear);
  return out;
}

std::mt19937_64 member_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

OdeSolution solve_phi_equality(const ScalarFn& b, double lambda, double s0, double phi0,
                               std::span<const double> grid, const ode::Rk4Options& opts,
                               std::string b_desc) {
  if (!(lambda > 0.0)) throw DomainError("solve_phi_equality: lambda must be positive");
  // s Phi' = 2 lambda (b(s/lambda) - Phi).
  auto rhs = [&](double sigma, double phi) {
    return 2.0 * lambda * (b(std::exp(sigma) / lambda) - phi);
  };
  OdeSolution out = solve_in_log(rhs, s0, phi0, grid, opts);
  out.lambda = lambda;
  out.b = std::move(b_desc);
  return out;
}

IdentityResidual verify_h_identity(const ScalarFn& b, double eta, std::span<const double> grid,
                                   double step_ratio) {
  require_grid(grid, "verify_h_identity");
  const double lambda = 0.5 * (eta + 1.0);
  quad::TailOptions tight;
  tight.panel.rel_tol = 1e-15;
  tight.panel.abs_tol = 1e-300;
  IdentityResidual out;
  for (double s : grid) {
    const double h = s * step_ratio;
    const std::vector<double> pts = {s - 2 * h, s - h, s, s + h, s + 2 * h};
    const auto r = transforms::h_transform(b, eta, lambda, pts, tight);
    if (r.report.any_divergent()) {
      throw DivergenceError("verify_h_identity: H diverges near s=" + std::to_string(s));
    }
    const auto H = r.curve.values();
    const double dH = (H[0] - 8.0 * H[1] + 8.0 * H[3] - H[4]) / (12.0 * h);
    const double res = std::abs(H[2] + s / (2.0 * lambda) * dH - b(s / lambda));
    out.residuals.push_back(res);
    if (res > out.max_residual) {
      out.max_residual = res;
      out.at = s;
    }
  }
  return out;
}

bool admissible(const ScalarFn& b, double lambda, const EnsembleMember& m) {
  const double s[] = {m.s0};
  const auto h = transforms::h_transform(b, 2.0 * lambda - 1.0, lambda, s);
  if (h.report.any_divergent()) return false;
  return m.phi0 <= h.curve.values()[0];
}

Ensemble draw_ensemble(const ScalarFn& b, double lambda, std::size_t count, double s0_lo,
                       double s0_hi, std::uint64_t seed, std::size_t max_draws) {
  if (!(s0_lo > 0.0) || !(s0_hi >= s0_lo)) throw DomainError("draw_ensemble: bad s0 range");
  Ensemble e;
  for (std::uint64_t i = 0; e.members.size() < count; ++i) {
    if (i >= max_draws) {
      throw DomainError("draw_ensemble: too few admissible draws within the budget");
    }
    auto rng = member_stream(seed, i);
    std::uniform_real_distribution<double> us(s0_lo, s0_hi);
    EnsembleMember m;
    m.s0 = us(rng);
    std::uniform_real_distribution<double> up(0.0, 2.0 * b(m.s0 / lambda));
    m.phi0 = up(rng);
    if (admissible(b, lambda, m)) e.members.push_back(m);
    else e.rejected.push_back(m);
  }
  return e;
}

BoundReport universal_bound_check(const ScalarFn& b, double eta, double lambda,
                                  std::span<const EnsembleMember> ensemble,
                                  std::span<const double> grid, double rel_tol) {
  if (!(eta > -1.0)) throw DomainError("universal_bound_check: eta must exceed -1");
  const double lambda_min = 0.5 * (eta + 1.0);
  if (lambda < lambda_min * (1.0 - 1e-15)) {
    throw DomainError("universal_bound_check: lambda must be at least (eta+1)/2");
  }
  BoundReport rep;
  rep.eta = eta;
  rep.lambda = lambda;
  rep.nonnegative_only = lambda > lambda_min * (1.0 + 1e-15);
  const auto H = transforms::h_transform(b, eta, lambda, grid);
  if (H.report.any_divergent()) {
    throw DivergenceError("universal_bound_check: H diverges on the grid");
  }
  const auto hv = H.curve.values();
  for (const auto& m : ensemble) {
    const OdeSolution sol = solve_phi_equality(b, lambda, m.s0, m.phi0, grid);
    const auto phi = sol.curve.values();
    const std::size_t offset = grid.size() - phi.size();
    if (sol.truncated) ++rep.truncated;
    if (rep.nonnegative_only &&
        std::any_of(phi.begin(), phi.end(), [](double v) { return v < 0.0; })) {
      ++rep.skipped_negative;
      continue;
    }
    ++rep.checked;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double bound = hv[offset + i];
      rep.max_ratio = std::max(rep.max_ratio, phi[i] / bound);
      if (phi[i] > bound * (1.0 + rel_tol)) {
        rep.violations.push_back(Violation{m, grid[offset + i], phi[i], bound});
      }
    }
  }
  return rep;
}

double DoubleExpBound::operator()(double t) const { return std::exp(log_value(t)); }

double DoubleExpBound::log_value(double t) const {
  if (!(t > 0.0)) throw DomainError("double-exponential bound: t must be positive");
  return std::log(k1) + k2 / std::pow(t, alpha);
}

DoubleExpBound double_exp_bound(double c1, double c2, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw DomainError("double_exp_bound: gamma must lie in (0, 1); gamma = 1 is critical");
  }
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw DomainError("double_exp_bound: need c1, c2 > 0");
  DoubleExpBound d;
  d.c1 = c1;
  d.c2 = c2;
  d.gamma = gamma;
  d.alpha = gamma / (1.0 - gamma);
  d.k1 = 2.0 * c1;
  d.k2 = std::pow(c2, 1.0 / (1.0 - gamma)) * std::pow(d.alpha, d.alpha);
  d.lambda = std::pow(d.alpha * c2, 1.0 / (1.0 - gamma));
  return d;
}

OdeSolution solve_double_exp_equality(const DoubleExpBound& d, double s0, double phi0,
                                      std::span<const double> grid,
                                      const ode::Rk4Options& opts) {
  // s Phi' = (2 lambda / s^alpha) (c1 exp(k2 / s^alpha) - Phi).
  auto rhs = [&d](double sigma, double phi) {
    const double u = std::exp(-d.alpha * sigma);
    return 2.0 * d.lambda * u * (d.c1 * std::exp(d.k2 * u) - phi);
  };
  OdeSolution out = solve_in_log(rhs, s0, phi0, grid, opts);
  out.lambda = d.lambda;
  out.b = "c1 exp(c2 / t^gamma)";
  return out;
}

DoubleExpReport double_exp_check(const DoubleExpBound& d, std::span<const double> grid,
                                 std::size_t count, std::uint64_t seed, double rel_tol) {
  require_grid(grid, "double_exp_check");
  DoubleExpReport rep;
  rep.bound = d;
  auto check = [&](const EnsembleMember& m) {
    const OdeSolution sol = solve_double_exp_equality(d, m.s0, m.phi0, grid);
    const auto phi = sol.curve.values();
    const auto s = sol.curve.abscissae();
    ++rep.checked;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double bound = d(s[i]);
      rep.max_ratio = std::max(rep.max_ratio, phi[i] / bound);
      if (phi[i] > bound * (1.0 + rel_tol)) {
        rep.violations.push_back(Violation{m, s[i], phi[i], bound});
      }
    }
    return sol;
  };

  for (std::uint64_t i = 0; rep.checked < count; ++i) {
    if (i >= 100 * count + 100) throw DomainError("double_exp_check: too many rejected draws");
    auto rng = member_stream(seed, i);
    std::uniform_real_distribution<double> us(grid.front(), grid.back());
    EnsembleMember m;
    m.s0 = us(rng);
    const double b0 = d.c1 * std::exp(d.k2 / std::pow(m.s0, d.alpha));
    std::uniform_real_distribution<double> up(0.0, 2.0 * b0);
    m.phi0 = up(rng);
    // Admissible iff the exp(2 k2 / s^alpha) component is nonpositive.
    if (m.phi0 > d(m.s0)) {
      ++rep.rejected;
      continue;
    }
    check(m);
  }

  // The extremal trajectory: phi0 on the bound at the middle of the grid.
  const double s_mid = std::sqrt(grid.front() * grid.back());
  const OdeSolution top = check(EnsembleMember{s_mid, d(s_mid)});
  std::vector<double> x;
  std::vector<double> y;
  const auto s = top.curve.abscissae();
  const auto phi = top.curve.values();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double excess = std::log(phi[i] / d.k1);
    if (excess > 0.0) {
      x.push_back(-std::log(s[i]));
      y.push_back(std::log(excess));
    }
  }
  if (x.size() >= 2) {
    const LineFit f = fit_line(x, y);
    rep.fitted_alpha = f.slope;
    rep.fit_residual = f.rms;
  }
  return rep;
}

}  // namespace ultrabound::ode_bounds
