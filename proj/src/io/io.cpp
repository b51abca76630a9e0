// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ultrabound/error.hpp"
#include "ultrabound/io.hpp"

namespace ultrabound::io {
namespace {

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double as_number(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw DomainError(std::string("spec: field '") + what + "' must be a number");
}

double field(const Json& j, const char* name, double fallback) {
  if (!j.contains(name)) return fallback;
  return as_number(j.at(name), name);
}

double required(const Json& j, const char* name) {
  if (!j.contains(name)) throw DomainError(std::string("spec: missing field '") + name + "'");
  return as_number(j.at(name), name);
}

std::vector<double> numbers(const Json& j, const char* name) {
  if (!j.contains(name) || !j.at(name).is_array()) {
    throw DomainError(std::string("spec: field '") + name + "' must be an array");
  }
  std::vector<double> out;
  for (const Json& v : j.at(name)) out.push_back(as_number(v, name));
  return out;
}

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) {
    throw DomainError(std::string(what) + ": cannot read '" + std::string(s) + "' as a number");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Json to_json(const FunctionSpec& spec) {
  Json j;
  if (const auto* p = std::get_if<PolyExp>(&spec.family())) {
    j = {{"family", "poly_exp"}, {"c1", number(p->c1)},       {"lambda", number(p->lambda)},
         {"d", number(p->d)},    {"c", number(p->c)},          {"gamma", number(p->gamma)}};
  } else if (const auto* d = std::get_if<DoubleExp>(&spec.family())) {
    j = {{"family", "double_exp"},
         {"c1", number(d->c1)},
         {"c2", number(d->c2)},
         {"gamma", number(d->gamma)}};
  } else {
    const auto& curve = std::get<Tabulated>(spec.family()).curve;
    Json xs = Json::array();
    Json ys = Json::array();
    for (double v : curve.abscissae()) xs.push_back(number(v));
    for (double v : curve.values()) ys.push_back(number(v));
    j = {{"family", "tabulated"},
         {"x", xs},
         {"y", ys},
         {"interp", std::string(to_string(curve.interp()))}};
  }
  if (spec.role() != Role::unspecified) j["role"] = std::string(to_string(spec.role()));
  return j;
}

FunctionSpec function_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw DomainError("spec: expected an object with a string 'family'");
  }
  const Role role =
      j.contains("role") ? role_from_string(j.at("role").get<std::string>()) : Role::unspecified;
  const auto family = j.at("family").get<std::string>();
  if (family == "poly_exp") {
    return FunctionSpec(PolyExp{field(j, "c1", 1.0), field(j, "lambda", 0.0), field(j, "d", 0.0),
                                field(j, "c", 0.0), field(j, "gamma", 0.0)},
                        role);
  }
  if (family == "double_exp") {
    return FunctionSpec(
        DoubleExp{field(j, "c1", 1.0), required(j, "c2"), required(j, "gamma")}, role);
  }
  if (family == "tabulated") {
    const Interp interp = j.contains("interp")
                              ? interp_from_string(j.at("interp").get<std::string>())
                              : Interp::linear;
    return FunctionSpec(Tabulated{SampledCurve(numbers(j, "x"), numbers(j, "y"), interp)}, role);
  }
  throw DomainError("spec: unknown family '" + family + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FunctionSpec load_function_spec(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw DomainError("'" + path + "': " + e.what());
  }
  return function_spec_from_json(j);
}

void save_function_spec(const FunctionSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << to_json(spec).dump(2) << '\n';
}

torus::CoefficientSequence sequence_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("sequence: expected an object");
  if (j.contains("a")) return torus::CoefficientSequence(torus::Explicit{numbers(j, "a")});
  const auto family = j.value("family", std::string());
  if (family == "power") return torus::CoefficientSequence(torus::Power{required(j, "alpha")});
  if (family == "logpower") return torus::CoefficientSequence(torus::LogPower{required(j, "gamma")});
  throw DomainError("sequence: expected 'a' or a family of power/logpower");
}

Json to_json(const torus::CoefficientSequence& seq) {
  if (const auto* p = std::get_if<torus::Power>(&seq.family())) {
    return {{"family", "power"}, {"alpha", p->alpha}};
  }
  if (const auto* q = std::get_if<torus::LogPower>(&seq.family())) {
    return {{"family", "logpower"}, {"gamma", q->gamma}};
  }
  Json a = Json::array();
  for (double v : std::get<torus::Explicit>(seq.family()).a) a.push_back(v);
  return {{"a", a}};
}

torus::CoefficientSequence parse_sequence(std::string_view text) {
  if (text.starts_with("power:")) {
    return torus::CoefficientSequence(torus::Power{parse_double(text.substr(6), "sequence")});
  }
  if (text.starts_with("logpower:")) {
    return torus::CoefficientSequence(torus::LogPower{parse_double(text.substr(9), "sequence")});
  }
  const std::string path(text);
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw DomainError("'" + path + "': " + e.what());
  }
  return sequence_from_json(j);
}

std::vector<double> GridSpec::points() const {
  return spacing == Spacing::log ? log_grid(lo, hi, n) : linear_grid(lo, hi, n);
}

std::string GridSpec::str() const {
  return format_double(lo) + ":" + format_double(hi) + ":" + std::to_string(n) + ":" +
         (spacing == Spacing::log ? "log" : "lin");
}

GridSpec parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() < 3 || parts.size() > 4) {
    throw DomainError("grid '" + std::string(text) + "': expected lo:hi:n[:lin|log]");
  }
  GridSpec g;
  g.lo = parse_double(parts[0], "grid");
  g.hi = parse_double(parts[1], "grid");
  const double n = parse_double(parts[2], "grid");
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e8) {
    throw DomainError("grid '" + std::string(text) + "': empty grid (n must be a positive integer)");
  }
  g.n = static_cast<std::size_t>(n);
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.hi < g.lo || (g.n > 1 && g.hi == g.lo)) {
    throw DomainError("grid '" + std::string(text) + "': empty grid (need lo < hi)");
  }
  g.spacing = g.lo > 0.0 ? Spacing::log : Spacing::linear;
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.spacing = Spacing::log;
    } else if (parts[3] == "lin") {
      g.spacing = Spacing::linear;
    } else {
      throw DomainError("grid '" + std::string(text) + "': spacing must be lin or log");
    }
  }
  if (g.spacing == Spacing::log && !(g.lo > 0.0)) {
    throw DomainError("grid '" + std::string(text) + "': log spacing needs lo > 0");
  }
  return g;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  for (std::string_view s : split(text, ',')) out.push_back(parse_double(s, "list"));
  return out;
}

}  // namespace ultrabound::io
