// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include "ultrabound/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ultrabound/error.hpp"

namespace ultrabound::transforms {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn10 = 2.302585092994045684;

bool covers_default_window(std::span<const double> grid) {
  return grid.front() <= 1e-3 * (1.0 + 1e-12) && grid.back() >= 1e3 * (1.0 - 1e-12);
}

void require_grid(std::span<const double> grid, const char* op) {
  if (grid.empty()) throw DomainError(std::string(op) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError(std::string(op) + ": grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(op) + ": grid must be strictly increasing");
    }
  }
}

// rate * int_0^inf e^{-rate v} g(t e^{-v} / scale) dv, the weighted mean
// shared by M_eta and H.
PointReport weighted_mean(const ScalarFn& g, double rate, double scale, double t,
                          const quad::TailOptions& opts) {
  auto integrand = [&](double v) {
    const double w = std::exp(-rate * v);
    if (w == 0.0) return 0.0;
    const double s = std::max(t * std::exp(-v) / scale, std::numeric_limits<double>::min());
    return w * g(s);
  };
  const quad::Result r = quad::integrate_to_infinity(integrand, 0.0, opts);
  PointReport p;
  p.x = t;
  if (!r.finite) {
    p.value = kInf;
    p.error = kInf;
    p.status = PointStatus::divergent_at_zero;
    p.reason = "non-integrable singularity at 0: integrand overflows";
  } else if (!r.converged) {
    p.value = kInf;
    p.error = kInf;
    p.status = PointStatus::divergent_at_zero;
    p.reason = "non-integrable singularity at 0: refinement did not converge";
  } else {
    p.value = rate * r.value;
    p.error = rate * r.error;
  }
  return p;
}

TransformResult collect(std::string op, std::string input, double rel_tol,
                        std::span<const double> grid, std::vector<PointReport> points) {
  TransformResult out;
  out.report.operation = std::move(op);
  out.report.input = std::move(input);
  out.report.rel_tol = rel_tol;
  out.report.localized = !covers_default_window(grid);
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points) values.push_back(p.value);
  out.curve = SampledCurve(std::vector<double>(grid.begin(), grid.end()), std::move(values),
                           Interp::log_linear);
  out.report.points = std::move(points);
  return out;
}

double reciprocal_log(const ScalarFn& log_B, double y) {
  const double lb = log_B(y);
  if (std::isnan(lb) || lb == -kInf) {
    throw DomainError("tail inversion: B is not positive at y=" + std::to_string(y));
  }
  return std::exp(-lb);
}

// Coordinate for the cumulative table: y = y_lo + e^z when y_lo is finite,
// y = z otherwise.
struct Coordinate {
  double y_lo;
  bool bounded() const { return std::isfinite(y_lo); }
  double y(double z) const { return bounded() ? y_lo + std::exp(z) : z; }
  double dy(double z) const { return bounded() ? std::exp(z) : 1.0; }
  double z(double y) const { return bounded() ? std::log(y - y_lo) : y; }
};

struct Node {
  double z;
  double log_q;
  double dlog_q;
  double err;
};

double hermite(const Node& a, const Node& b, double z) {
  const double h = b.z - a.z;
  const double u = (z - a.z) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * a.log_q + (u3 - 2 * u2 + u) * h * a.dlog_q +
         (-2 * u3 + 3 * u2) * b.log_q + (u3 - u2) * h * b.dlog_q;
}

}  // namespace

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::ok:
      return "ok";
    case PointStatus::divergent_at_zero:
      return "divergent_at_zero";
    case PointStatus::divergent_tail:
      return "divergent_tail";
  }
  return "ok";
}

bool TransformReport::any_divergent() const { return divergent_count() > 0; }

std::size_t TransformReport::divergent_count() const {
  return static_cast<std::size_t>(std::count_if(
      points.begin(), points.end(), [](const PointReport& p) { return p.status != PointStatus::ok; }));
}

std::vector<double> default_t_grid() { return log_grid_per_decade(1e-3, 1e3, 64); }

TransformResult m_eta(const ScalarFn& beta, double eta, std::span<const double> t_grid,
                      const quad::TailOptions& opts, std::string input) {
  if (!(eta > -1.0)) throw DomainError("m_eta: eta must exceed -1");
  require_grid(t_grid, "m_eta");
  std::vector<PointReport> points;
  for (double t : t_grid) points.push_back(weighted_mean(beta, eta + 1.0, eta + 1.0, t, opts));
  return collect("m_eta", std::move(input), opts.panel.rel_tol, t_grid, std::move(points));
}

TransformResult h_transform(const ScalarFn& b, double eta, double lambda,
                            std::span<const double> t_grid, const quad::TailOptions& opts,
                            std::string input) {
  if (!(eta > -1.0)) throw DomainError("h_transform: eta must exceed -1");
  if (!(lambda > 0.0)) throw DomainError("h_transform: lambda must be positive");
  require_grid(t_grid, "h_transform");
  std::vector<PointReport> points;
  // 2 lambda t^-(eta+1) int_0^t s^eta b(s/lambda) ds
  //   = (2 lambda / (eta+1)) * (eta+1) int_0^inf e^{-(eta+1)v} b(t e^-v / lambda) dv.
  const double factor = 2.0 * lambda / (eta + 1.0);
  for (double t : t_grid) {
    PointReport p = weighted_mean(b, eta + 1.0, lambda, t, opts);
    if (p.status == PointStatus::ok) {
      p.value *= factor;
      p.error *= factor;
    }
    points.push_back(std::move(p));
  }
  return collect("h_transform", std::move(input), opts.panel.rel_tol, t_grid, std::move(points));
}

quad::Result tail_integral_log(const ScalarFn& log_B, double s, const InvertOptions& opts) {
  quad::Result total;
  total.converged = true;
  const double split = std::max(s, std::exp(1.0));
  if (s < split) {
    total = quad::integrate([&](double y) { return reciprocal_log(log_B, y); }, s, split,
                            opts.quad);
    if (!total.finite || !total.converged) return total;
  }
  // Past e, y = exp(exp(v)) turns algebraic and logarithmic tails into
  // exponentially decaying ones; g(v) dv = dy / B(y).
  auto g = [&](double v) {
    const double w = std::exp(v);
    const double lb = log_B(std::exp(w));
    if (std::isnan(lb) || lb == -kInf) {
      throw DomainError("tail inversion: B is not positive at log y=" + std::to_string(w));
    }
    return w * std::exp(w - lb);
  };
  const double v_max = std::log(opts.log_y_max);
  const double v0 = std::log(std::log(split));
  if (v0 < v_max) {
    const quad::Result mid = quad::integrate(g, v0, v_max, opts.quad);
    total.panels += mid.panels;
    if (!mid.finite || !mid.converged) {
      total.value = kInf;
      total.error = kInf;
      total.finite = mid.finite;
      total.converged = false;
      return total;
    }
    total.value += mid.value;
    total.error += mid.error;
  }
  // Remainder past the evaluable range, from the local decay rate of g.
  const double v1 = std::max(v0, v_max);
  const double g1 = g(v1);
  if (g1 > 0.0) {
    const double g0 = g(v1 - 0.25);
    const double kappa = g0 > 0.0 ? 4.0 * std::log(g0 / g1) : kInf;
    if (!(kappa > 0.05)) {
      total.value = kInf;
      total.error = kInf;
      total.converged = false;
      return total;
    }
    const double remainder = g1 / kappa;
    total.value += remainder;
    total.error += remainder;
  }
  return total;
}

quad::Result tail_integral(const ScalarFn& B, double s, const InvertOptions& opts) {
  return tail_integral_log([&B](double y) { return std::log(B(y)); }, s, opts);
}

TransformResult ultrabound_from_B(const ScalarFn& B, double y_lo, std::span<const double> t_grid,
                                  const InvertOptions& opts, std::string input) {
  return ultrabound_from_log_B([&B](double y) { return std::log(B(y)); }, y_lo, t_grid, opts,
                               std::move(input));
}

TransformResult ultrabound_from_log_B(const ScalarFn& log_B, double y_lo,
                                      std::span<const double> t_grid, const InvertOptions& opts,
                                      std::string input) {
  require_grid(t_grid, "ultrabound_from_B");
  const Coordinate c{y_lo};
  const double t_min = t_grid.front();
  const double t_max = t_grid.back();
  auto inv = [&](double y) { return reciprocal_log(log_B, y); };

  auto q_at = [&](double z) {
    quad::Result r = tail_integral_log(log_B, c.y(z), opts);
    if (!r.finite || !r.converged) {
      throw DivergenceError("tail inversion: int^inf dy/B(y) does not converge (" + input + ")");
    }
    return r;
  };

  // Upper end of the table: q(z_hi) <= t_min.
  double z_hi = 0.0;
  quad::Result q_hi = q_at(z_hi);
  for (double step = 1.0; q_hi.value > t_min; step *= 2.0) {
    z_hi += step;
    if (c.y(z_hi) > std::exp(std::min(opts.log_y_max, 700.0))) {
      throw DomainError("tail inversion: t=" + std::to_string(t_min) +
                        " is below the range of q");
    }
    q_hi = q_at(z_hi);
  }
  // Comparison test on the top two decades of the table.
  {
    const double Y = c.y(z_hi);
    const quad::Result d1 = quad::integrate(inv, Y, Y + kLn10, opts.quad);
    const quad::Result d2 = quad::integrate(inv, Y + kLn10, Y + 2 * kLn10, opts.quad);
    bool decays = d2.value < d1.value * (1.0 - 1e-9);
    // Far out, windows of width ln 10 are too narrow to resolve slow decay;
    // compare decades of y instead.
    if (!decays && Y > 0.0 && std::isfinite(100.0 * Y)) {
      const quad::Result m1 = quad::integrate(inv, Y, 10.0 * Y, opts.quad);
      const quad::Result m2 = quad::integrate(inv, 10.0 * Y, 100.0 * Y, opts.quad);
      decays = m2.value < m1.value * (1.0 - 1e-9);
    }
    if (!decays) {
      throw DivergenceError("tail inversion: 1/B does not decay over the top two decades (" +
                            input + ")");
    }
  }
  // Lower end: q(z_lo) >= t_max.
  double z_lo = std::min(0.0, z_hi - 1.0);
  quad::Result q_lo = q_at(z_lo);
  for (double step = 1.0; q_lo.value < t_max; step *= 2.0) {
    z_lo -= step;
    const bool exhausted =
        c.bounded() ? z_lo < std::log(1e-14 * (1.0 + std::abs(y_lo))) : z_lo < -1e15;
    if (exhausted) {
      throw DomainError("tail inversion: t=" + std::to_string(t_max) +
                        " exceeds q at the lower end of the domain");
    }
    q_lo = q_at(z_lo);
  }

  // Cumulative table from the top down.
  const std::size_t n =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((z_hi - z_lo) / opts.node_step)),
                              16, 200000);
  const double h = (z_hi - z_lo) / static_cast<double>(n);
  std::vector<Node> nodes(n + 1);
  double q = q_hi.value;
  double err = q_hi.error;
  for (std::size_t k = n + 1; k-- > 0;) {
    const double z = k == n ? z_hi : z_lo + h * static_cast<double>(k);
    if (k < n) {
      const quad::Result piece = quad::integrate(inv, c.y(z), c.y(nodes[k + 1].z), opts.quad);
      if (!piece.finite || !piece.converged) {
        throw DivergenceError("tail inversion: 1/B not integrable near y=" +
                              std::to_string(c.y(z)));
      }
      q += piece.value;
      err += piece.error;
    }
    nodes[k] = Node{z, std::log(q), -c.dy(z) * inv(c.y(z)) / q, err};
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(nodes[k + 1].log_q < nodes[k].log_q)) {
      throw DomainError("tail inversion: q is not strictly decreasing");
    }
  }

  std::vector<PointReport> points;
  for (double t : t_grid) {
    const double lt = std::log(t);
    // First node with log q <= log t; the root lies in [k-1, k].
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), lt,
                                     [](const Node& nd, double v) { return nd.log_q > v; });
    PointReport p;
    p.x = t;
    if (it == nodes.begin() || it == nodes.end()) {
      const Node& nd = it == nodes.end() ? nodes.back() : nodes.front();
      p.value = c.y(nd.z);
      p.error = nd.err / inv(p.value);
    } else {
      const Node& a = *(it - 1);
      const Node& b = *it;
      double lo = a.z;
      double hi = b.z;
      while (hi - lo > opts.bracket_width * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (hermite(a, b, mid) > lt) lo = mid;
        else hi = mid;
      }
      p.value = c.y(0.5 * (lo + hi));
      // dM = dq * B(M).
      p.error = std::max(a.err, b.err) / inv(p.value);
    }
    points.push_back(std::move(p));
  }
  TransformResult out =
      collect("ultrabound_from_B", std::move(input), opts.quad.rel_tol, t_grid, std::move(points));
  out.curve = SampledCurve(std::vector<double>(t_grid.begin(), t_grid.end()),
                           std::vector<double>(out.curve.values().begin(), out.curve.values().end()),
                           Interp::linear);
  return out;
}

namespace {

TransformResult exponentiate(TransformResult r, std::span<const double> t_grid) {
  r.report.operation = "coulhon_invert";
  std::vector<double> m;
  for (auto& p : r.report.points) {
    p.value = std::exp(p.value);
    p.error *= p.value;
    m.push_back(p.value);
  }
  r.curve = SampledCurve(std::vector<double>(t_grid.begin(), t_grid.end()), std::move(m),
                         Interp::log_linear);
  return r;
}

double log_y_lo(double x_lo) {
  if (x_lo < 0.0) throw DomainError("coulhon_invert: x_lo must be nonnegative");
  return x_lo > 0.0 ? std::log(x_lo) : -kInf;
}

}  // namespace

TransformResult coulhon_invert(const ScalarFn& theta, double x_lo, std::span<const double> t_grid,
                               const InvertOptions& opts, std::string input) {
  InvertOptions capped = opts;
  // Theta(x) needs x = e^y representable.
  capped.log_y_max = std::min(opts.log_y_max, std::log(700.0));
  auto log_B = [&theta](double y) { return std::log(theta(std::exp(y))) - y; };
  return exponentiate(ultrabound_from_log_B(log_B, log_y_lo(x_lo), t_grid, capped, input), t_grid);
}

TransformResult coulhon_invert_log(const ScalarFn& log_ratio, double x_lo,
                                   std::span<const double> t_grid, const InvertOptions& opts,
                                   std::string input) {
  return exponentiate(ultrabound_from_log_B(log_ratio, log_y_lo(x_lo), t_grid, opts, input),
                      t_grid);
}

quad::Result coulhon_p_log(const ScalarFn& log_ratio, double x, const InvertOptions& opts) {
  if (!(x > 0.0)) throw DomainError("coulhon_p: x must be positive");
  return tail_integral_log(log_ratio, std::log(x), opts);
}

}  // namespace ultrabound::transforms
