#include "favard/line.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace favard {
namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double a) {
  if (!std::isfinite(a)) throw Error("line angle must be finite");
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  if (r == kPi) r = 0;
  return r;
}

BigInt floor_div(const BigInt& x, const BigInt& y) {  // y > 0
  BigInt q = x / y;
  if (q * y > x) --q;
  return q;
}

BigInt ceil_div(const BigInt& x, const BigInt& y) {  // y > 0
  BigInt q = x / y;
  if (q * y < x) ++q;
  return q;
}

BigInt mod_nonneg(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

/// min over x in [0, m] of |k x - target| for k >= 0.
BigInt axis_min(const BigInt& k, const BigInt& target, const BigInt& m) {
  if (target <= 0) return -target;
  if (k == 0) return target;
  if (target >= k * m) return target - k * m;
  const BigInt q = target / k;
  const BigInt r = target - q * k;
  const BigInt r_up = k - r;
  return std::min(r, r_up);  // x = q and x = q + 1 both lie in [0, m]
}

/// min over (i, j) in [0, m]^2 of |a i + b j - d| for a, b >= 0, not both 0.
BigInt box_min(const BigInt& a, const BigInt& b, const BigInt& d, const BigInt& m) {
  if (a == 0) return axis_min(b, d, m);
  if (b == 0) return axis_min(a, d, m);
  if (d <= 0) return -d;
  const BigInt reach = (a + b) * m;
  if (d >= reach) return d - reach;

  BigInt best = -1;
  auto consider_j = [&](const BigInt& j) {
    if (j < 0 || j > m) return;
    const BigInt v = axis_min(a, d - b * j, m);
    if (best < 0 || v < best) best = v;
  };

  // Columns where the inner minimization clamps at i = 0 or i = m, and the
  // box corners; the clamped distance is monotone away from these columns.
  const BigInt j_t0 = floor_div(d, b);
  const BigInt j_tm = floor_div(d - a * m, b);
  for (int k = -2; k <= 2; ++k) {
    consider_j(j_t0 + k);
    consider_j(j_tm + k);
  }
  consider_j(BigInt(0));
  consider_j(BigInt(1));
  consider_j(m - 1);
  consider_j(m);

  // Interior columns, t(j) = d - b j in [0, a(m-1)]: both rounding neighbors
  // of t/a are admissible rows, so the distance is dist(t mod a to {0, a}),
  // and t mod a walks an arithmetic progression in j.
  const BigInt j_lo = std::max(BigInt(0), ceil_div(d - a * (m - 1), b));
  const BigInt j_hi = std::min(m, j_t0);
  if (j_lo <= j_hi) {
    const BigInt r0 = mod_nonneg(d - b * j_lo, a);
    const BigInt step = mod_nonneg(-b, a);
    const BigInt count = j_hi - j_lo;
    const BigInt min_r = min_mod_linear(r0, step, count, a);
    const BigInt max_r =
        a - 1 - min_mod_linear(a - 1 - r0, mod_nonneg(-step, a), count, a);
    const BigInt gap_hi = a - max_r;
    const BigInt window = std::min(min_r, gap_hi);
    if (best < 0 || window < best) best = window;
  }
  return best;
}

}  // namespace

BigInt min_mod_linear(BigInt a, BigInt b, BigInt n, const BigInt& m) {
  if (m <= 0) throw Error("min_mod_linear: modulus must be positive");
  if (n < 0) throw Error("min_mod_linear: empty index range");
  a = mod_nonneg(a, m);
  b = mod_nonneg(b, m);
  if (b == 0 || n == 0) return a;
  const BigInt wraps = (a + n * b) / m;
  if (wraps == 0) return a;
  // Values just after each of the `wraps` wrap-arounds lie in [0, b) and
  // form an arithmetic progression mod b starting at (a - m) mod b with
  // step (-m) mod b; the overall minimum is there or at the start.
  const BigInt a2 = mod_nonneg(a - m, b);
  const BigInt b2 = mod_nonneg(-m, b);
  return std::min(a, min_mod_linear(a2, b2, wraps - 1, b));
}

Line Line::from_direction(double alpha, double offset) { return Line{wrap_angle(alpha), offset}; }

Line Line::from_normal(double theta, double t) {
  const double th = wrap_angle(theta);
  if (th >= kPi / 2) return Line{th - kPi / 2, t};
  return Line{th + kPi / 2, -t};
}

Line Line::vertical(double x) { return Line{kPi / 2, -x}; }

double Line::theta() const {
  double t = alpha + kPi / 2;
  if (t >= kPi) t -= kPi;
  return t;
}

double Line::normal_offset() const { return alpha + kPi / 2 >= kPi ? -offset : offset; }

double Line::nx() const {
  const double s = std::sin(alpha);
  return std::abs(s) < 4e-16 ? 0.0 : -s;
}

double Line::ny() const {
  const double c = std::cos(alpha);
  return std::abs(c) < 4e-16 ? 0.0 : c;
}

LineGeometry::LineGeometry(const Line& l) {
  const DoubleDecomposition dx = decompose_double(l.nx());
  const DoubleDecomposition dy = decompose_double(l.ny());
  const DoubleDecomposition dc = decompose_double(l.offset);
  if (dx.mantissa == 0 && dy.mantissa == 0) throw Error("degenerate line normal");
  int s = 0;
  for (const DoubleDecomposition& d : {dx, dy, dc}) {
    if (d.mantissa != 0) s = std::max(s, -d.exp2);
  }
  scale_ = s;
  const auto scaled = [s](const DoubleDecomposition& d) {
    if (d.mantissa == 0) return BigInt(0);
    return BigInt(d.mantissa) << (d.exp2 + s);
  };
  a_ = scaled(dx);
  b_ = scaled(dy);
  c_ = scaled(dc);
  const BigInt ab = a_ + b_;
  lo_ = std::min(std::min(BigInt(0), a_), std::min(b_, ab));
  hi_ = std::max(std::max(BigInt(0), a_), std::max(b_, ab));
}

BigInt LineGeometry::child_g(const BigInt& g, std::uint8_t digit) const {
  BigInt r = g << 1;
  if (kDigitDx[digit]) r -= a_;
  if (kDigitDy[digit]) r -= b_;
  return r;
}

bool LineGeometry::hits_square(const Address& addr) const {
  const CornerNumerators c = corner_numerators(addr);
  return hits((c_ << c.level) - a_ * c.x - b_ * c.y);
}

BigInt LineGeometry::vertex_min_numerator(int depth) const {
  if (depth < 0) throw Error("vertex check depth must be nonnegative");
  const BigInt m = pow2_int(depth);
  BigInt a = a_;
  BigInt b = b_;
  BigInt d = c_ << depth;
  if (a < 0 && b < 0) {
    a = -a;
    b = -b;
    d = -d;
  }
  if (b < 0) {  // reflect j -> m - j
    d -= b * m;
    b = -b;
  }
  if (a < 0) {  // reflect i -> m - i
    d -= a * m;
    a = -a;
  }
  return box_min(a, b, d, m);
}

double LineGeometry::vertex_distance(int depth) const {
  const BigInt num = vertex_min_numerator(depth);
  return to_double(BigRat(num, pow2_int(scale_ + depth)));
}

double vertex_epsilon(int depth) { return std::ldexp(1.0, -(depth + 20)); }

bool is_vertex_safe(const Line& l, int depth, std::optional<double> eps) {
  const LineGeometry geom(l);
  const double e = eps.value_or(vertex_epsilon(depth));
  const BigInt num = geom.vertex_min_numerator(depth);
  if (num == 0) return false;
  if (e <= 0) return true;
  return BigRat(num, pow2_int(geom.scale() + depth)) > exact_rational(e);
}

void require_vertex_safe(const Line& l, int depth, std::optional<double> eps) {
  if (is_vertex_safe(l, depth, eps)) return;
  const double e = eps.value_or(vertex_epsilon(depth));
  const double delta = std::max(2 * e, std::ldexp(1.0, -40));
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, e);
  throw VertexError("line passes within " + std::string(buf, res.ptr) + " of a level-" +
                        std::to_string(depth) +
                        " dyadic vertex; retry with the offset perturbed by at least that much",
                    l.offset + delta);
}

}  // namespace favard
