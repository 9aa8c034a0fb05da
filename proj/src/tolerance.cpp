#include "thermo/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace thermo {

namespace {

std::optional<double> parse_number(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v) || v <= 0) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Tolerances> parse_tolerance_override(std::string_view text, Tolerances base) {
  if (text.empty()) return base;
  if (text.find('=') == std::string_view::npos) {
    auto v = parse_number(text);
    if (!v) return std::nullopt;
    base.law = *v;
    return base;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    const auto key = item.substr(0, eq);
    const auto v = parse_number(item.substr(eq + 1));
    if (!v) return std::nullopt;
    if (key == "state") base.state = *v;
    else if (key == "quadrature") base.quadrature = *v;
    else if (key == "first_law") base.first_law_rel = *v;
    else if (key == "first_law_abs") base.first_law_abs = *v;
    else if (key == "law") base.law = *v;
    else return std::nullopt;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return base;
}

const Tolerances& default_tolerances() {
  static const Tolerances tiers = [] {
    Tolerances t;
    if (const char* env = std::getenv("THERMOKERNEL_TOL")) {
      if (auto parsed = parse_tolerance_override(env, t)) t = *parsed;
    }
    return t;
  }();
  return tiers;
}

bool agree(double a, double b, double rel, double abs) {
  const double bound = std::max(rel * std::max(std::fabs(a), std::fabs(b)), abs);
  return std::fabs(a - b) <= bound;
}

}  // namespace thermo
