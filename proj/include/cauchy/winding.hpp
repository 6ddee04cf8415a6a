#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/geometry.hpp"
#include "cauchy/integrate.hpp"

namespace cauchy {

// The discrete winding number works on R_p, the perimeter-1 square centered
// at p with lower-left corner a = p - 1/8 - i/8. Points of its boundary are
// addressed by the counter-clockwise arc length from a, in [0, 1).

inline constexpr double kSquareHalfSide = 0.125;
/// A loop sample closer than this to p counts as hitting p.
inline constexpr double kLoopClearance = 1e-12;
/// Largest projected arc step accepted by the refinement.
inline constexpr double kMaxArcStep = 0.25;

/// Intersection of the boundary of R_p with the ray from p through q.
inline Complex project_to_square(Complex q, Complex p) {
  const Complex d = q - p;
  const double m = std::max(std::abs(d.real()), std::abs(d.imag()));
  if (m == 0.0) throw Error(ErrorCode::LoopHitsPoint, "cannot project p onto its own square");
  return p + d * (kSquareHalfSide / m);
}

namespace detail {

/// Arc coordinate of the ray with direction d != 0.
inline double direction_arc(Complex d) noexcept {
  const double x = d.real(), y = d.imag();
  const double ax = std::abs(x), ay = std::abs(y);
  const double m = std::max(ax, ay);
  const double u = kSquareHalfSide * x / m, v = kSquareHalfSide * y / m;
  double l;
  if (y < 0.0 && ay >= ax)
    l = u + kSquareHalfSide;  // bottom, a -> b
  else if (x > 0.0 && ax >= ay)
    l = 0.25 + (v + kSquareHalfSide);  // right, b -> c
  else if (y > 0.0 && ay >= ax)
    l = 0.5 + (kSquareHalfSide - u);  // top, c -> d
  else
    l = 0.75 + (kSquareHalfSide - v);  // left, d -> a
  return l >= 1.0 ? l - 1.0 : l;
}

/// Representative of (to - from) mod 1 in (-1/2, 1/2]; the antipodal tie
/// counts as a counter-clockwise half turn.
inline double shorter_arc(double from, double to) noexcept {
  double d = to - from;
  if (d < 0.0) d += 1.0;
  if (d >= 1.0) d -= 1.0;
  return d > 0.5 ? d - 1.0 : d;
}

inline double loop_arc(const LoopPath& f, Complex p, double t) {
  const Complex d = f(t) - p;
  if (std::abs(d) < kLoopClearance)
    throw Error(ErrorCode::LoopHitsPoint,
                "loop passes within 1e-12 of the point at t = " + fmt_num(t));
  return direction_arc(d);
}

}  // namespace detail

/// Counter-clockwise boundary length of R_p from its lower-left corner to r.
inline double arc_coordinate(Complex r, Complex p) {
  const Complex d = r - p;
  const double m = std::max(std::abs(d.real()), std::abs(d.imag()));
  const double tol = 1e-12 * std::max(1.0, std::abs(p));
  if (std::abs(m - kSquareHalfSide) > tol)
    throw Error(ErrorCode::PointNotOnBoundary, "point is not on the boundary of R_p");
  return detail::direction_arc(d);
}

/// Signed length of the shorter boundary arc from r to s: positive when it
/// runs counter-clockwise, and +1/2 at the antipodal tie.
inline double signed_arc(Complex r, Complex s, Complex p) {
  return detail::shorter_arc(arc_coordinate(r, p), arc_coordinate(s, p));
}

/// W(P, f, p): the sum of signed arcs between consecutive projected samples.
inline double winding_sum(const LoopPath& f, Complex p, const Partition& part) {
  const auto ts = part.points();
  double sum = 0.0;
  double prev = detail::loop_arc(f, p, ts[0]);
  for (std::size_t j = 1; j < ts.size(); ++j) {
    const double cur = detail::loop_arc(f, p, ts[j]);
    sum += detail::shorter_arc(prev, cur);
    prev = cur;
  }
  return sum;
}

struct WindingResult {
  long value = 0;
  std::size_t partition_size = 0;
  double max_arc_step = 0.0;
};

/// Winding sums over doubling equipartitions. Accepts once the largest
/// projected arc step is below 1/4 and the integer has agreed across two
/// consecutive doublings. A final guard sample of 4k points checks that the
/// loop stays away from p.
inline WindingResult winding_number(const LoopPath& f, Complex p,
                                    const RefinementConfig& cfg = {}) {
  cfg.validate();
  std::size_t k = cfg.k_min;
  std::vector<double> arcs(k + 1);
  for (std::size_t i = 0; i < k; ++i)
    arcs[i] = detail::loop_arc(f, p, static_cast<double>(i) / static_cast<double>(k));
  arcs[k] = arcs[0];

  std::vector<long> history;
  for (;;) {
    double sum = 0.0, max_step = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const double step = detail::shorter_arc(arcs[j - 1], arcs[j]);
      sum += step;
      max_step = std::max(max_step, std::abs(step));
    }
    const long value = std::lround(sum);
    history.push_back(value);
    const std::size_t n = history.size();
    if (max_step < kMaxArcStep && n >= 3 && history[n - 2] == value && history[n - 3] == value) {
      const std::size_t guard = 4 * k;
      for (std::size_t j = 0; j < guard; ++j)
        detail::loop_arc(f, p, (static_cast<double>(j) + 0.5) / static_cast<double>(guard));
      return {value, k, max_step};
    }
    if (k > cfg.k_max / 2)
      throw Error(ErrorCode::NoStabilization,
                  "winding sums did not stabilize by k = " + std::to_string(k));
    std::vector<double> next(2 * k + 1);
    for (std::size_t i = 0; i < k; ++i) {
      next[2 * i] = arcs[i];
      next[2 * i + 1] = detail::loop_arc(
          f, p, static_cast<double>(2 * i + 1) / static_cast<double>(2 * k));
    }
    next[2 * k] = next[0];
    arcs = std::move(next);
    k *= 2;
  }
}

/// Winding number as g(1) - g(0) for a lift g of the arc coordinate along the
/// loop: g advances by the nearest representative of each coordinate change.
/// Fails when any single step is 1/4 or longer.
inline long winding_number_lifted(const LoopPath& f, Complex p, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::InvalidArgument, "steps must be positive");
  auto coordinate = [&](double t) {
    const Complex q = f(t);
    if (std::abs(q - p) < kLoopClearance)
      throw Error(ErrorCode::LoopHitsPoint, "loop passes within 1e-12 of the point");
    return arc_coordinate(project_to_square(q, p), p);
  };
  const double g0 = coordinate(0.0);
  double g = g0, last = g0;
  for (std::size_t j = 1; j <= steps; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(steps);
    const double cur = coordinate(t);
    double inc = cur - last;
    inc -= std::round(inc);
    if (inc == -0.5) inc = 0.5;
    if (std::abs(inc) >= kMaxArcStep)
      throw Error(ErrorCode::StepTooCoarse, "lifting step of " + detail::fmt_num(inc) +
                                                " at t = " + detail::fmt_num(t));
    g += inc;
    last = cur;
  }
  return std::lround(g - g0);
}

/// h(t) = f(2t) on [0, 1/2] and g(2t - 1) on [1/2, 1].
inline LoopPath loop_product(const LoopPath& f, const LoopPath& g) {
  if (std::abs(f(1.0) - g(0.0)) > 1e-12)
    throw Error(ErrorCode::EndpointMismatch, "f(1) and g(0) differ");
  return LoopPath([f, g](double t) { return t <= 0.5 ? f(2.0 * t) : g(2.0 * t - 1.0); });
}

/// t -> f(1 - t).
inline LoopPath loop_reverse(const LoopPath& f) {
  return LoopPath([f](double t) { return f(1.0 - t); });
}

/// t -> f(s + t mod 1).
inline LoopPath loop_shift(const LoopPath& f, double s) {
  return LoopPath([f, s](double t) {
    double u = s + t;
    u -= std::floor(u);
    return f(u);
  });
}

/// f o loop, e.g. f_R = f o phi_R.
template <ComplexFunction F>
LoopPath compose(const F& f, const LoopPath& loop) {
  return LoopPath([f, loop](double t) { return f(loop(t)); });
}

}  // namespace cauchy
