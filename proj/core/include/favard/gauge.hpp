#pragma once

#include <optional>
#include <string>
#include <vector>

#include "favard/errors.hpp"
#include "favard/numeric.hpp"

namespace favard {

enum class GaugeKind { Power, PowerLog, Table };

/// A gauge function evaluated on the dyadic grid: value(n) is phi(2^-n).
///
/// Three kinds:
///   power     phi(r) = r^a
///   powerlog  phi(2^-n) = 2^(-a n) * max(n,1)^b   (clamped at r=1 so phi stays positive)
///   table     explicit phi(2^-n), n = 0..len-1
///
/// Tables built through `table()` or `parse()` are rescaled so phi(1) = 1.
/// `table_raw` keeps the given scale; regularize() uses it so that its
/// output stays pointwise below the input.
class GaugeSpec {
 public:
  static GaugeSpec power(double a);
  static GaugeSpec power_log(double a, double b);
  static GaugeSpec table(std::vector<BigRat> values);
  static GaugeSpec table_raw(std::vector<BigRat> values);

  /// CLI grammar: "power:a=<float>", "powerlog:a=<float>,b=<float>", "table:@<path>"
  /// (table files: one positive decimal per line, line n = phi(2^-n), from n=0).
  static GaugeSpec parse(const std::string& spec);

  GaugeKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }

  /// Largest n at which the gauge is evaluable (INT_MAX for analytic kinds).
  int max_depth() const;

  /// phi(2^-n) as a double.
  double value(int n) const;

  /// phi(2^-n) as an exact rational, when the kind and parameters allow it
  /// (tables always; power/powerlog with integer exponents).
  std::optional<BigRat> exact_value(int n) const;

  bool has_exact_values(int depth) const;

  /// Round-trippable CLI-style label, e.g. "power:a=1".
  std::string describe() const;

 private:
  GaugeSpec() = default;
  GaugeKind kind_ = GaugeKind::Power;
  double a_ = 1.0;
  double b_ = 0.0;
  std::vector<BigRat> values_;  // Table kind only
  std::string table_source_;    // file path when parsed, for describe()
};

/// Parses a plain or scientific decimal ("0.25", "3e-2") into an exact rational.
BigRat parse_decimal(const std::string& text);

struct GaugeViolation {
  enum class What { NonPositive, NotMonotone, NotRegular };
  int level = 0;
  What what = What::NonPositive;
  std::string detail;
};

struct ValidationReport {
  int depth = 0;
  bool exact = false;  // comparisons done in exact arithmetic
  std::vector<GaugeViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Checks positivity, weak monotonicity and the scale-regularity condition
/// (phi(2^-n) * 4^n weakly increasing) for all n <= depth.
/// Non-positive values are a hard error; the other two are listed per level.
ValidationReport validate_gauge(const GaugeSpec& g, int depth);

struct RegularizeResult {
  GaugeSpec gauge;          // table kind, unnormalized
  bool truncated_infimum;   // grid minimum still falling at m = depth
};

/// Largest scale-regular minorant on the grid:
///   phi1(2^-n) = 4^-n * min{ phi(2^-m) * 4^m : n <= m <= depth }.
/// Requires phi weakly increasing; regularity is not assumed (repairing it
/// is the point).  Output satisfies phi1 <= phi, phi1 weakly increasing and
/// phi1(2^-n) * 4^n weakly increasing, and the operation is idempotent.
RegularizeResult regularize(const GaugeSpec& g, int depth);

}  // namespace favard
