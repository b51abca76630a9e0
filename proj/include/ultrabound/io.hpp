// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

// JSON descriptions of function specs and coefficient sequences, grid specs
// of the form lo:hi:n[:lin|log], and shortest round-trip number formatting.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ultrabound/function_spec.hpp"
#include "ultrabound/torus.hpp"

namespace ultrabound::io {

using Json = nlohmann::json;

/// {"family":"poly_exp","c1":...,"lambda":...,"d":...,"c":...,"gamma":...},
/// {"family":"double_exp","c1":...,"c2":...,"gamma":...} or
/// {"family":"tabulated","x":[...],"y":[...],"interp":"linear"}; an optional
/// "role" names the convention. Non-finite numbers are written as the
/// strings "inf", "-inf", "nan".
Json to_json(const FunctionSpec& spec);
FunctionSpec function_spec_from_json(const Json& j);

FunctionSpec load_function_spec(const std::string& path);
void save_function_spec(const FunctionSpec& spec, const std::string& path);

/// {"a":[...]} for an explicit list, {"family":"power","alpha":...} or
/// {"family":"logpower","gamma":...}.
torus::CoefficientSequence sequence_from_json(const Json& j);
Json to_json(const torus::CoefficientSequence& seq);

/// "power:ALPHA", "logpower:GAMMA", or a path to a JSON file.
torus::CoefficientSequence parse_sequence(std::string_view text);

enum class Spacing { linear, log };

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
  Spacing spacing = Spacing::log;

  std::vector<double> points() const;
  std::string str() const;
};

/// Parses lo:hi:n with an optional :lin or :log suffix (log by default when
/// lo > 0, linear otherwise). Throws DomainError on malformed or empty grids.
GridSpec parse_grid(std::string_view text);

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

/// Comma-separated list of positive reals ("1,4").
std::vector<double> parse_list(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace ultrabound::io
