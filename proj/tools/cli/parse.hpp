#pragma once

// Parsing of command-line values: complex rapidities, grids, lists and
// tolerance overrides.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dytwist/types.hpp"

namespace dytwist::cli {

/// Accepts "1.2", "0.5i", "1-2.5i", "-i", "ipi", "-2ipi", "1+ipi", "0.5+1.5ipi".
/// The suffix "ipi" multiplies by i pi exactly. Throws InvalidArgument.
Complex parse_complex(std::string_view text);

/// "start:stop:steps" with steps >= 1 (steps == 1 gives {start}), or a
/// single number.
std::vector<double> parse_grid(std::string_view text);

/// "lo:hi" interval.
std::pair<double, double> parse_interval(std::string_view text);

/// Comma-separated numbers.
std::vector<double> parse_number_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Comma-separated words, empty entries dropped.
std::vector<std::string> split_list(std::string_view text);

/// "id=val,id=val".
std::map<std::string, double> parse_tolerances(std::string_view text);

double parse_double(std::string_view text);

}  // namespace dytwist::cli
