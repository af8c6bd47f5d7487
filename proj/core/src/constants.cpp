#include <charconv>
#include <cmath>
#include <numbers>

#include "envlab/complement.hpp"

namespace envlab {

namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParseError("invalid number '" + std::string(text) + "' in grid");
  }
  return v;
}

}  // namespace

double c2_formula(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("c2 needs p >= 1");
  if (p == 1.0 || p == kInfinity) return kInfinity;
  const double q = p / (p - 1.0);
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(std::lgamma((p + 1.0) / 2.0) / p + std::lgamma((q + 1.0) / 2.0) / q);
}

double c2n_l1(int n) {
  if (n < 1) throw DomainError("c2n_l1 needs n >= 1");
  const double x = n;
  return x * std::exp(std::lgamma(x / 2.0) - std::lgamma((x + 1.0) / 2.0)) / std::sqrt(std::numbers::pi);
}

C2Table scan_c2(std::span<const double> grid) {
  C2Table table;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    C2Row row{grid[k], c2_formula(grid[k]), true};
    if (k > 0) {
      const C2Row& prev = table.rows.back();
      if (row.p <= 2.0) {
        row.monotone = row.c2 < prev.c2;
        table.decreasing_below_2 = table.decreasing_below_2 && row.monotone;
      } else if (prev.p >= 2.0) {
        row.monotone = row.c2 > prev.c2;
        table.increasing_above_2 = table.increasing_above_2 && row.monotone;
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    const auto a = spec.find(':');
    const auto b = spec.find(':', a + 1);
    if (b == std::string::npos || spec.find(':', b + 1) != std::string::npos) {
      throw ParseError("grid range must look like start:stop:step");
    }
    const std::string_view sv(spec);
    const double start = parse_number(sv.substr(0, a));
    const double stop = parse_number(sv.substr(a + 1, b - a - 1));
    const double step = parse_number(sv.substr(b + 1));
    if (!(step > 0.0) || stop < start) throw ParseError("grid range needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw ParseError("grid too large");
    for (long k = 0; k < count; ++k) {
      out.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::string_view rest(spec);
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace envlab
