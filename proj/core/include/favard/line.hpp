#pragma once

#include <cstdint>
#include <optional>

#include "favard/address.hpp"
#include "favard/errors.hpp"
#include "favard/numeric.hpp"

namespace favard {

/// A line in the plane, stored by direction angle and signed offset:
///   line = { s * d + offset * n : s real },
/// d = (cos alpha, sin alpha), n = (-sin alpha, cos alpha) the left-hand unit
/// normal, alpha in [0, pi).  Points p on the line satisfy p . n = offset.
///
/// The projection parametrization used elsewhere writes the same line as
/// { p : p . u(theta) = t } with u(theta) = (cos theta, sin theta); theta is
/// the normal angle.  from_normal/theta()/normal_offset() convert.
struct Line {
  double alpha = 0.0;
  double offset = 0.0;

  static Line from_direction(double alpha, double offset);
  /// Line with unit normal u(theta) and signed offset t: p . u = t.
  static Line from_normal(double theta, double t);
  static Line horizontal(double y) { return from_direction(0.0, y); }
  static Line vertical(double x);

  /// Normal angle in [0, pi) and the matching offset (p . u(theta) = t).
  double theta() const;
  double normal_offset() const;

  double nx() const;  // left-hand normal components
  double ny() const;
};

/// Exact integer form of a line given by double coefficients: since doubles
/// are dyadic rationals, nx x + ny y = offset scales to A x + B y = C with
/// integer A, B, C at a common power-of-two scale 2^-s.
///
/// For the level-k square with lower-left corner (X, Y) / 2^k define
///   g = C 2^k - A X - B Y.
/// The closed square meets the line iff min(0,A,B,A+B) <= g <= max(0,A,B,A+B),
/// and a child square's g follows from the parent's by
///   g' = 2 g - A dx - B dy
/// with (dx, dy) the digit offsets.  All tests are exact.
class LineGeometry {
 public:
  explicit LineGeometry(const Line& l);

  const BigInt& A() const { return a_; }
  const BigInt& B() const { return b_; }
  const BigInt& C() const { return c_; }
  int scale() const { return scale_; }

  BigInt root_g() const { return c_; }
  BigInt child_g(const BigInt& g, std::uint8_t digit) const;
  bool hits(const BigInt& g) const { return lo_ <= g && g <= hi_; }

  bool hits_square(const Address& a) const;

  /// Exact minimum of |A i + B j - C 2^k| over lattice vertices
  /// (i/2^k, j/2^k), 0 <= i, j <= 2^k; the line's distance to the nearest
  /// level-k vertex is this over 2^(scale+k) (up to the unit-normal rounding).
  BigInt vertex_min_numerator(int depth) const;

  /// Distance of the line to the nearest depth-level dyadic vertex of the
  /// closed unit square, as a double (0 means it passes through one).
  double vertex_distance(int depth) const;

 private:
  BigInt a_, b_, c_;
  BigInt lo_, hi_;
  int scale_ = 0;
};

/// Default vertex-clearance requirement at a working depth.
double vertex_epsilon(int depth);

/// True iff the line's distance to every dyadic vertex of level <= depth
/// exceeds eps (default vertex_epsilon(depth)).
bool is_vertex_safe(const Line& l, int depth, std::optional<double> eps = std::nullopt);

/// Throws VertexError with a suggested offset perturbation when unsafe.
void require_vertex_safe(const Line& l, int depth, std::optional<double> eps = std::nullopt);

/// Minimum of (a + i*b) mod m over integer i in [0, n]; Euclidean-style
/// recursion, exact.  Exposed for testing.
BigInt min_mod_linear(BigInt a, BigInt b, BigInt n, const BigInt& m);

}  // namespace favard
