#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cauchy/error.hpp"

namespace cauchy {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {

inline std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace detail

/// Axis-parallel closed rectangle with strictly positive width and height.
/// Vertices are derived counter-clockwise from the lower-left corner.
class Rectangle {
 public:
  Rectangle(double re_lo, double re_hi, double im_lo, double im_hi)
      : re_lo_(re_lo), re_hi_(re_hi), im_lo_(im_lo), im_hi_(im_hi) {
    if (!(std::isfinite(re_lo) && std::isfinite(re_hi) && std::isfinite(im_lo) &&
          std::isfinite(im_hi)))
      throw Error(ErrorCode::InvalidArgument, "rectangle coordinates must be finite");
    if (!(re_lo < re_hi) || !(im_lo < im_hi))
      throw Error(ErrorCode::InvalidArgument,
                  "degenerate rectangle [" + detail::fmt_num(re_lo) + "," +
                      detail::fmt_num(re_hi) + "]x[" + detail::fmt_num(im_lo) + "," +
                      detail::fmt_num(im_hi) + "]");
  }

  /// Square centered at `center` with the given half side.
  static Rectangle square(Complex center, double half_side) {
    return {center.real() - half_side, center.real() + half_side,
            center.imag() - half_side, center.imag() + half_side};
  }

  double re_lo() const noexcept { return re_lo_; }
  double re_hi() const noexcept { return re_hi_; }
  double im_lo() const noexcept { return im_lo_; }
  double im_hi() const noexcept { return im_hi_; }

  double width() const noexcept { return re_hi_ - re_lo_; }
  double height() const noexcept { return im_hi_ - im_lo_; }
  double area() const noexcept { return width() * height(); }
  double perimeter() const noexcept { return 2.0 * (width() + height()); }
  double diameter() const noexcept { return std::hypot(width(), height()); }
  Complex center() const noexcept {
    return {0.5 * (re_lo_ + re_hi_), 0.5 * (im_lo_ + im_hi_)};
  }

  /// (a, b, c, d): lower-left, lower-right, upper-right, upper-left.
  std::array<Complex, 4> vertices() const noexcept {
    return {Complex{re_lo_, im_lo_}, Complex{re_hi_, im_lo_}, Complex{re_hi_, im_hi_},
            Complex{re_lo_, im_hi_}};
  }

  bool is_square(double rel_tol = 1e-12) const noexcept {
    return std::abs(width() - height()) <= rel_tol * std::max(width(), height());
  }

  bool contains(Complex z) const noexcept {
    return re_lo_ <= z.real() && z.real() <= re_hi_ && im_lo_ <= z.imag() &&
           z.imag() <= im_hi_;
  }
  bool contains_in_interior(Complex z) const noexcept {
    return re_lo_ < z.real() && z.real() < re_hi_ && im_lo_ < z.imag() &&
           z.imag() < im_hi_;
  }
  bool contains(const Rectangle& r) const noexcept {
    return re_lo_ <= r.re_lo_ && r.re_hi_ <= re_hi_ && im_lo_ <= r.im_lo_ &&
           r.im_hi_ <= im_hi_;
  }
  bool interiors_intersect(const Rectangle& r) const noexcept {
    return re_lo_ < r.re_hi_ && r.re_lo_ < re_hi_ && im_lo_ < r.im_hi_ &&
           r.im_lo_ < im_hi_;
  }
  bool intersects(const Rectangle& r) const noexcept {
    return re_lo_ <= r.re_hi_ && r.re_lo_ <= re_hi_ && im_lo_ <= r.im_hi_ &&
           r.im_lo_ <= im_hi_;
  }

  /// Euclidean distance from z to the boundary curve (zero on the boundary).
  double boundary_distance(Complex z) const noexcept {
    const double x = z.real(), y = z.imag();
    if (contains(z))
      return std::min({x - re_lo_, re_hi_ - x, y - im_lo_, im_hi_ - y});
    const double dx = std::max({re_lo_ - x, 0.0, x - re_hi_});
    const double dy = std::max({im_lo_ - y, 0.0, y - im_hi_});
    return std::hypot(dx, dy);
  }

  /// Same center, both sides multiplied by `factor`.
  Rectangle scaled(double factor) const {
    const Complex c = center();
    const double hw = 0.5 * width() * factor, hh = 0.5 * height() * factor;
    return {c.real() - hw, c.real() + hw, c.imag() - hh, c.imag() + hh};
  }

  Rectangle translated(Complex shift) const {
    return {re_lo_ + shift.real(), re_hi_ + shift.real(), im_lo_ + shift.imag(),
            im_hi_ + shift.imag()};
  }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;

 private:
  double re_lo_, re_hi_, im_lo_, im_hi_;
};

inline double area(const Rectangle& r) noexcept { return r.area(); }

/// Midpoint cuts, in the fixed order SW, SE, NW, NE.
inline std::array<Rectangle, 4> quarters(const Rectangle& s) {
  const Complex m = s.center();
  return {Rectangle{s.re_lo(), m.real(), s.im_lo(), m.imag()},
          Rectangle{m.real(), s.re_hi(), s.im_lo(), m.imag()},
          Rectangle{s.re_lo(), m.real(), m.imag(), s.im_hi()},
          Rectangle{m.real(), s.re_hi(), m.imag(), s.im_hi()}};
}

/// Straight segment from a to a different point b, parametrized a + t(b - a).
class Segment {
 public:
  Segment(Complex a, Complex b) : a_(a), b_(b) {
    if (!is_finite(a) || !is_finite(b))
      throw Error(ErrorCode::InvalidArgument, "segment endpoints must be finite");
    if (a == b) throw Error(ErrorCode::InvalidArgument, "segment endpoints coincide");
  }

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex delta() const noexcept { return b_ - a_; }
  double length() const noexcept { return std::abs(b_ - a_); }

  /// t = 1 returns b exactly.
  Complex point(double t) const noexcept { return t == 1.0 ? b_ : a_ + t * (b_ - a_); }

  Segment reversed() const { return {b_, a_}; }

  double distance_to(Complex z) const noexcept {
    const Complex d = b_ - a_;
    const double t = std::clamp(std::real((z - a_) * std::conj(d)) / std::norm(d), 0.0, 1.0);
    return std::abs(z - point(t));
  }

  friend bool operator==(const Segment&, const Segment&) = default;

 private:
  Complex a_, b_;
};

/// Parameter values 0 = t_0 < t_1 < ... < t_k = 1.
class Partition {
 public:
  explicit Partition(std::vector<double> ts) : ts_(std::move(ts)) {
    if (ts_.size() < 2 || ts_.front() != 0.0 || ts_.back() != 1.0)
      throw Error(ErrorCode::InvalidArgument, "partition must start at 0 and end at 1");
    for (std::size_t i = 1; i < ts_.size(); ++i)
      if (!(ts_[i - 1] < ts_[i]))
        throw Error(ErrorCode::InvalidArgument, "partition must be strictly increasing");
  }

  static Partition equipartition(std::size_t k) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "equipartition needs k >= 1");
    std::vector<double> ts(k + 1);
    for (std::size_t i = 0; i <= k; ++i) ts[i] = static_cast<double>(i) / static_cast<double>(k);
    ts[k] = 1.0;
    return Partition(std::move(ts));
  }

  std::span<const double> points() const noexcept { return ts_; }
  std::size_t intervals() const noexcept { return ts_.size() - 1; }

  double mesh() const noexcept {
    double m = 0.0;
    for (std::size_t i = 1; i < ts_.size(); ++i) m = std::max(m, ts_[i] - ts_[i - 1]);
    return m;
  }

 private:
  std::vector<double> ts_;
};

/// Grid partition of a parent rectangle by real and imaginary cuts. The cut
/// lists include both ends of the parent's side intervals.
class GridPartition {
 public:
  GridPartition(const Rectangle& parent, std::vector<double> re_cuts,
                std::vector<double> im_cuts)
      : parent_(parent), re_cuts_(std::move(re_cuts)), im_cuts_(std::move(im_cuts)) {
    check(re_cuts_, parent.re_lo(), parent.re_hi());
    check(im_cuts_, parent.im_lo(), parent.im_hi());
  }

  /// The grid induced by every side of every rectangle in `family`, clipped to
  /// `parent`. Each family member that lies inside `parent` is an exact union
  /// of cells of this grid.
  static GridPartition induced(const Rectangle& parent, std::span<const Rectangle> family) {
    std::vector<double> re{parent.re_lo(), parent.re_hi()};
    std::vector<double> im{parent.im_lo(), parent.im_hi()};
    for (const auto& r : family) {
      for (double x : {r.re_lo(), r.re_hi()})
        if (parent.re_lo() < x && x < parent.re_hi()) re.push_back(x);
      for (double y : {r.im_lo(), r.im_hi()})
        if (parent.im_lo() < y && y < parent.im_hi()) im.push_back(y);
    }
    std::sort(re.begin(), re.end());
    re.erase(std::unique(re.begin(), re.end()), re.end());
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return {parent, std::move(re), std::move(im)};
  }

  const Rectangle& parent() const noexcept { return parent_; }
  std::span<const double> re_cuts() const noexcept { return re_cuts_; }
  std::span<const double> im_cuts() const noexcept { return im_cuts_; }
  std::size_t cell_count() const noexcept {
    return (re_cuts_.size() - 1) * (im_cuts_.size() - 1);
  }

  /// Row-major from the bottom row.
  std::vector<Rectangle> cells() const {
    std::vector<Rectangle> out;
    out.reserve(cell_count());
    for (std::size_t j = 1; j < im_cuts_.size(); ++j)
      for (std::size_t i = 1; i < re_cuts_.size(); ++i)
        out.emplace_back(re_cuts_[i - 1], re_cuts_[i], im_cuts_[j - 1], im_cuts_[j]);
    return out;
  }

 private:
  static void check(const std::vector<double>& cuts, double lo, double hi) {
    if (cuts.size() < 2 || cuts.front() != lo || cuts.back() != hi)
      throw Error(ErrorCode::InvalidArgument, "grid cuts must span the parent rectangle");
    for (std::size_t i = 1; i < cuts.size(); ++i)
      if (!(cuts[i - 1] < cuts[i]))
        throw Error(ErrorCode::InvalidArgument, "grid cuts must be strictly increasing");
  }

  Rectangle parent_;
  std::vector<double> re_cuts_, im_cuts_;
};

inline bool pairwise_disjoint_interiors(std::span<const Rectangle> family) noexcept {
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (family[i].interiors_intersect(family[j])) return false;
  return true;
}

/// Whether the union of `family` contains `target`, decided exactly on the
/// grid induced by all rectangle sides.
inline bool covers(std::span<const Rectangle> family, const Rectangle& target) {
  const auto grid = GridPartition::induced(target, family);
  for (const auto& cell : grid.cells()) {
    const bool hit = std::any_of(family.begin(), family.end(),
                                 [&](const Rectangle& r) { return r.contains(cell); });
    if (!hit) return false;
  }
  return true;
}

/// A closed path [0,1] -> C with curve(0) == curve(1). Evaluation at t = 1
/// returns curve(0), so closure is exact regardless of rounding in the
/// underlying curve.
class LoopPath {
 public:
  using Curve = std::function<Complex(double)>;

  /// User curves are checked for closure to within `closure_tol`.
  explicit LoopPath(Curve curve, double closure_tol = 1e-12) : curve_(std::move(curve)) {
    if (!curve_) throw Error(ErrorCode::InvalidArgument, "empty loop curve");
    const Complex start = curve_(0.0), end = curve_(1.0);
    if (!is_finite(start) || !is_finite(end) || std::abs(start - end) > closure_tol)
      throw Error(ErrorCode::NotALoop, "curve(0) and curve(1) differ by " +
                                           detail::fmt_num(std::abs(start - end)));
  }

  Complex operator()(double t) const { return curve_(t >= 1.0 ? 0.0 : t); }

 private:
  Curve curve_;
};

/// The counter-clockwise circuit of the boundary with corner times 0, 1/4,
/// 1/2, 3/4 and 1.
inline LoopPath boundary_circuit(const Rectangle& r) {
  const auto v = r.vertices();
  return LoopPath([v](double t) -> Complex {
    if (t <= 0.0 || t >= 1.0) return v[0];
    const int i = std::min(3, static_cast<int>(4.0 * t));
    const Complex from = v[static_cast<std::size_t>(i)];
    const Complex to = v[static_cast<std::size_t>((i + 1) % 4)];
    return from + (to - from) * (4.0 * t - i);
  });
}

}  // namespace cauchy
