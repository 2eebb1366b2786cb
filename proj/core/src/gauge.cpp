#include "favard/gauge.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <fstream>
#include <sstream>

namespace favard {
namespace {

bool integral_parameter(double x) {
  return std::isfinite(x) && x == std::floor(x) && std::abs(x) <= 1e6;
}

BigRat pow_rat(const BigRat& base, std::int64_t e) {
  BigRat r = 1;
  BigRat b = base;
  for (std::int64_t k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

GaugeSpec GaugeSpec::power(double a) {
  if (!std::isfinite(a) || a <= 0)
    throw GaugeError("invalid gauge: power exponent must be a positive finite number");
  GaugeSpec g;
  g.kind_ = GaugeKind::Power;
  g.a_ = a;
  return g;
}

GaugeSpec GaugeSpec::power_log(double a, double b) {
  if (!std::isfinite(a) || a <= 0 || !std::isfinite(b))
    throw GaugeError("invalid gauge: powerlog needs positive finite a and finite b");
  GaugeSpec g;
  g.kind_ = GaugeKind::PowerLog;
  g.a_ = a;
  g.b_ = b;
  return g;
}

GaugeSpec GaugeSpec::table(std::vector<BigRat> values) {
  GaugeSpec g = table_raw(std::move(values));
  const BigRat scale = g.values_.front();
  if (scale != 1) {
    for (auto& v : g.values_) v /= scale;
  }
  return g;
}

GaugeSpec GaugeSpec::table_raw(std::vector<BigRat> values) {
  if (values.empty()) throw GaugeError("invalid gauge: empty table");
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (values[n] <= 0) {
      throw GaugeError("invalid gauge: non-positive table value at level " + std::to_string(n));
    }
  }
  GaugeSpec g;
  g.kind_ = GaugeKind::Table;
  g.values_ = std::move(values);
  return g;
}

BigRat parse_decimal(const std::string& text) {
  std::size_t i = 0;
  const std::size_t len = text.size();
  auto fail = [&]() -> BigRat {
    throw GaugeError("invalid gauge: cannot parse decimal \"" + text + "\"");
  };

  bool negative = false;
  if (i < len && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  std::int64_t frac_digits = 0;
  bool any = false;
  for (; i < len && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits = digits * 10 + (text[i] - '0');
    any = true;
  }
  if (i < len && text[i] == '.') {
    ++i;
    for (; i < len && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits = digits * 10 + (text[i] - '0');
      ++frac_digits;
      any = true;
    }
  }
  if (!any) return fail();
  std::int64_t exp10 = 0;
  if (i < len && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < len && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    if (i >= len || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail();
    for (; i < len && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exp10 = exp10 * 10 + (text[i] - '0');
      if (exp10 > 100000) return fail();
    }
    if (exp_neg) exp10 = -exp10;
  }
  if (i != len) return fail();

  BigRat r(digits);
  const std::int64_t shift = exp10 - frac_digits;
  if (shift > 0) r *= pow_rat(BigRat(10), shift);
  if (shift < 0) r /= pow_rat(BigRat(10), -shift);
  return negative ? -r : r;
}

GaugeSpec GaugeSpec::parse(const std::string& spec) {
  auto param_after = [&](const std::string& prefix, const std::string& body,
                         std::size_t from, std::size_t to) {
    const std::string piece = body.substr(from, to - from);
    try {
      std::size_t used = 0;
      const double v = std::stod(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      return v;
    } catch (const std::exception&) {
      throw GaugeError("invalid gauge: bad " + prefix + " parameter \"" + piece + "\"");
    }
  };

  if (spec.rfind("power:", 0) == 0) {
    const std::string body = spec.substr(6);
    if (body.rfind("a=", 0) != 0) throw GaugeError("invalid gauge: expected power:a=<float>");
    return power(param_after("power", body, 2, body.size()));
  }
  if (spec.rfind("powerlog:", 0) == 0) {
    const std::string body = spec.substr(9);
    const std::size_t comma = body.find(',');
    if (body.rfind("a=", 0) != 0 || comma == std::string::npos ||
        body.compare(comma + 1, 2, "b=") != 0) {
      throw GaugeError("invalid gauge: expected powerlog:a=<float>,b=<float>");
    }
    const double a = param_after("powerlog", body, 2, comma);
    const double b = param_after("powerlog", body, comma + 3, body.size());
    return power_log(a, b);
  }
  if (spec.rfind("table:@", 0) == 0) {
    const std::string path = spec.substr(7);
    std::ifstream in(path);
    if (!in) throw GaugeError("invalid gauge: cannot open table file \"" + path + "\"");
    std::vector<BigRat> values;
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      values.push_back(parse_decimal(line.substr(start)));
      if (values.back() <= 0) {
        throw GaugeError("invalid gauge: non-positive table value at level " +
                         std::to_string(values.size() - 1));
      }
    }
    GaugeSpec g = table(std::move(values));
    g.table_source_ = path;
    return g;
  }
  throw GaugeError("invalid gauge: unrecognized spec \"" + spec +
                   "\" (expected power:a=, powerlog:a=,b= or table:@path)");
}

int GaugeSpec::max_depth() const {
  if (kind_ == GaugeKind::Table) return static_cast<int>(values_.size()) - 1;
  return INT_MAX;
}

double GaugeSpec::value(int n) const {
  if (n < 0) throw GaugeError("gauge level must be nonnegative");
  switch (kind_) {
    case GaugeKind::Power:
      return std::exp2(-a_ * n);
    case GaugeKind::PowerLog:
      return std::exp2(-a_ * n) * std::pow(static_cast<double>(std::max(n, 1)), b_);
    case GaugeKind::Table:
      if (n > max_depth()) {
        throw GaugeError("gauge not evaluable at level " + std::to_string(n) + ": table ends at " +
                         std::to_string(max_depth()));
      }
      return to_double(values_[static_cast<std::size_t>(n)]);
  }
  return 0.0;
}

std::optional<BigRat> GaugeSpec::exact_value(int n) const {
  if (n < 0) throw GaugeError("gauge level must be nonnegative");
  switch (kind_) {
    case GaugeKind::Power: {
      if (!integral_parameter(a_)) return std::nullopt;
      const auto an = static_cast<std::int64_t>(a_) * n;
      return BigRat(BigInt(1), pow2_int(an));
    }
    case GaugeKind::PowerLog: {
      if (!integral_parameter(a_) || !integral_parameter(b_)) return std::nullopt;
      const auto an = static_cast<std::int64_t>(a_) * n;
      const auto b = static_cast<std::int64_t>(b_);
      BigRat r(BigInt(1), pow2_int(an));
      const BigRat m(std::max(n, 1));
      if (b >= 0) r *= pow_rat(m, b);
      if (b < 0) r /= pow_rat(m, -b);
      return r;
    }
    case GaugeKind::Table:
      if (n > max_depth()) {
        throw GaugeError("gauge not evaluable at level " + std::to_string(n) + ": table ends at " +
                         std::to_string(max_depth()));
      }
      return values_[static_cast<std::size_t>(n)];
  }
  return std::nullopt;
}

bool GaugeSpec::has_exact_values(int depth) const {
  switch (kind_) {
    case GaugeKind::Power:
      return integral_parameter(a_);
    case GaugeKind::PowerLog:
      return integral_parameter(a_) && integral_parameter(b_);
    case GaugeKind::Table:
      return depth <= max_depth();
  }
  return false;
}

std::string GaugeSpec::describe() const {
  switch (kind_) {
    case GaugeKind::Power:
      return "power:a=" + format_param(a_);
    case GaugeKind::PowerLog:
      return "powerlog:a=" + format_param(a_) + ",b=" + format_param(b_);
    case GaugeKind::Table:
      if (!table_source_.empty()) return "table:@" + table_source_;
      return "table[" + std::to_string(values_.size()) + " values]";
  }
  return "";
}

ValidationReport validate_gauge(const GaugeSpec& g, int depth) {
  if (depth < 1) throw GaugeError("validation depth must be >= 1");
  if (depth > g.max_depth()) {
    throw GaugeError("gauge not evaluable to depth " + std::to_string(depth) + ": table ends at " +
                     std::to_string(g.max_depth()));
  }

  ValidationReport rep;
  rep.depth = depth;
  rep.exact = g.has_exact_values(depth);

  std::vector<BigRat> vals(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) {
    if (rep.exact) {
      vals[static_cast<std::size_t>(n)] = *g.exact_value(n);
    } else {
      const double v = g.value(n);
      if (!(v > 0) || !std::isfinite(v)) {
        throw GaugeError("invalid gauge: non-positive value at level " + std::to_string(n) +
                         " (double evaluation gave " + format_value(v) + ")");
      }
      vals[static_cast<std::size_t>(n)] = exact_rational(v);
    }
    if (vals[static_cast<std::size_t>(n)] <= 0) {
      throw GaugeError("invalid gauge: non-positive value at level " + std::to_string(n));
    }
  }

  for (int n = 1; n <= depth; ++n) {
    const BigRat& cur = vals[static_cast<std::size_t>(n)];
    const BigRat& prev = vals[static_cast<std::size_t>(n - 1)];
    if (cur > prev) {
      const std::string cur_txt = rep.exact ? fraction_string(cur) : format_value(to_double(cur));
      const std::string prev_txt =
          rep.exact ? fraction_string(prev) : format_value(to_double(prev));
      rep.violations.push_back({n, GaugeViolation::What::NotMonotone,
                                "phi(2^-" + std::to_string(n) + ") = " + cur_txt +
                                    " exceeds phi(2^-" + std::to_string(n - 1) + ") = " +
                                    prev_txt});
    }
    if (4 * cur < prev) {
      rep.violations.push_back({n, GaugeViolation::What::NotRegular,
                                "phi(2^-n) 4^n decreases from level " + std::to_string(n - 1) +
                                    " to " + std::to_string(n)});
    }
  }
  return rep;
}

RegularizeResult regularize(const GaugeSpec& g, int depth) {
  if (depth < 1) throw GaugeError("regularize depth must be >= 1");
  if (depth > g.max_depth()) {
    throw GaugeError("gauge not evaluable to depth " + std::to_string(depth) + ": table ends at " +
                     std::to_string(g.max_depth()));
  }

  const std::size_t count = static_cast<std::size_t>(depth) + 1;
  std::vector<BigRat> vals(count);
  for (int n = 0; n <= depth; ++n) {
    const auto exact = g.exact_value(n);
    vals[static_cast<std::size_t>(n)] = exact ? *exact : exact_rational(g.value(n));
    if (vals[static_cast<std::size_t>(n)] <= 0) {
      throw GaugeError("invalid gauge: non-positive value at level " + std::to_string(n));
    }
  }
  for (int n = 1; n <= depth; ++n) {
    if (vals[static_cast<std::size_t>(n)] > vals[static_cast<std::size_t>(n - 1)]) {
      throw GaugeError("regularize requires a weakly increasing gauge; violated at level " +
                       std::to_string(n));
    }
  }

  std::vector<BigRat> h(count);
  for (int n = 0; n <= depth; ++n) {
    h[static_cast<std::size_t>(n)] = vals[static_cast<std::size_t>(n)] * pow2_int(2 * n);
  }

  BigRat head_min = h[0];
  for (int n = 1; n < depth; ++n) head_min = std::min(head_min, h[static_cast<std::size_t>(n)]);
  const bool truncated = h[static_cast<std::size_t>(depth)] < head_min;

  std::vector<BigRat> out(count);
  BigRat suffix = h[static_cast<std::size_t>(depth)];
  for (int n = depth; n >= 0; --n) {
    suffix = std::min(suffix, h[static_cast<std::size_t>(n)]);
    out[static_cast<std::size_t>(n)] = suffix / pow2_int(2 * n);
  }

  return RegularizeResult{GaugeSpec::table_raw(std::move(out)), truncated};
}

}  // namespace favard
