#include "parse.hpp"

#include <charconv>
#include <cmath>

#include <fmt/core.h>

#include "dytwist/errors.hpp"

namespace dytwist::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// One signed term: "[+-]number", "[+-]number i", "[+-]i", with an optional
// "pi" after the i.
Complex parse_term(std::string_view term, std::string_view whole) {
  auto bad = [&] { return InvalidArgument(fmt::format("cannot parse complex '{}'", whole)); };
  double sign = 1.0;
  if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
    if (term.front() == '-') sign = -1.0;
    term.remove_prefix(1);
  }
  if (term.empty()) throw bad();
  Complex unit{1.0, 0.0};
  if (term.ends_with("ipi")) {
    unit = Complex(0.0, kPi);
    term.remove_suffix(3);
  } else if (term.ends_with("i") || term.ends_with("j")) {
    unit = Complex(0.0, 1.0);
    term.remove_suffix(1);
  }
  if (term.ends_with("*")) term.remove_suffix(1);
  double mag = 1.0;
  if (!term.empty()) {
    mag = parse_double(term);
  } else if (unit == Complex(1.0, 0.0)) {
    throw bad();
  }
  return sign * mag * unit;
}

}  // namespace

double parse_double(std::string_view text) {
  text = trim(text);
  std::string buf(text);
  if (buf.empty()) throw InvalidArgument("empty number");
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw InvalidArgument(fmt::format("cannot parse number '{}'", text));
  }
  return v;
}

Complex parse_complex(std::string_view text) {
  const std::string_view whole = trim(text);
  if (whole.empty()) throw InvalidArgument("empty complex value");
  // Split at a sign that is not the leading one and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < whole.size(); ++i) {
    const char c = whole[i];
    const char prev = whole[i - 1];
    if ((c == '+' || c == '-') && prev != 'e' && prev != 'E') {
      if (split != std::string_view::npos) {
        throw InvalidArgument(fmt::format("cannot parse complex '{}'", whole));
      }
      split = i;
    }
  }
  if (split == std::string_view::npos) return parse_term(whole, whole);
  return parse_term(whole.substr(0, split), whole) + parse_term(whole.substr(split), whole);
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() == 1) return {parse_double(parts[0])};
  if (parts.size() != 3) {
    throw InvalidArgument(fmt::format("grid '{}' must be start:stop:steps", text));
  }
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const double steps_d = parse_double(parts[2]);
  if (steps_d < 1.0 || steps_d != std::floor(steps_d) || steps_d > 1e6) {
    throw InvalidArgument(fmt::format("grid '{}' needs an integer step count >= 1", text));
  }
  const int steps = static_cast<int>(steps_d);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    out.push_back(steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1));
  }
  return out;
}

std::pair<double, double> parse_interval(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || text.find(':', colon + 1) != std::string_view::npos) {
    throw InvalidArgument(fmt::format("interval '{}' must be lo:hi", text));
  }
  const double lo = parse_double(text.substr(0, colon));
  const double hi = parse_double(text.substr(colon + 1));
  if (lo > hi) throw InvalidArgument(fmt::format("interval '{}' has lo > hi", text));
  return {lo, hi};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      const auto item = trim(text.substr(start, i - start));
      if (!item.empty()) out.emplace_back(item);
      start = i + 1;
    }
  }
  return out;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item));
  if (out.empty()) throw InvalidArgument("empty number list");
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw InvalidArgument(fmt::format("cannot parse integer '{}'", item));
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty integer list");
  return out;
}

std::map<std::string, double> parse_tolerances(std::string_view text) {
  std::map<std::string, double> out;
  for (const auto& item : split_list(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidArgument(fmt::format("tolerance '{}' must be id=value", item));
    }
    const double v = parse_double(std::string_view(item).substr(eq + 1));
    if (!(v >= 0.0)) throw InvalidArgument(fmt::format("tolerance '{}' must be >= 0", item));
    out[item.substr(0, eq)] = v;
  }
  return out;
}

}  // namespace dytwist::cli
