#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/funcspec.hpp"
#include "cauchy/geometry.hpp"

namespace cauchy {

/// Anything evaluable on C minus a declared finite singularity set.
template <class F>
concept ComplexFunction = requires(const F& f, Complex z) {
  { f(z) } -> std::convertible_to<Complex>;
  { f.singularities() } -> std::convertible_to<std::span<const Complex>>;
};

/// Wraps a plain callable with a declared singularity set, with the same
/// evaluation checks as FunctionSpec.
template <class Fn>
class Analytic {
 public:
  explicit Analytic(Fn fn, std::vector<Complex> singularities = {})
      : fn_(std::move(fn)), singularities_(std::move(singularities)) {}

  Complex operator()(Complex z) const {
    for (Complex s : singularities_)
      if (z == s) throw Error(ErrorCode::EvalAtSingularity, "evaluation at declared singularity");
    const Complex v = fn_(z);
    if (!is_finite(v)) throw Error(ErrorCode::Range, "non-finite function value");
    return v;
  }

  std::span<const Complex> singularities() const noexcept { return singularities_; }

 private:
  Fn fn_;
  std::vector<Complex> singularities_;
};

template <class Fn>
Analytic<Fn> analytic(Fn fn, std::vector<Complex> singularities = {}) {
  return Analytic<Fn>(std::move(fn), std::move(singularities));
}

/// Distance below which a declared singularity counts as lying on a contour.
inline constexpr double kContourClearance = 1e-12;

struct RefinementConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t k_min = 16;
  std::size_t k_max = std::size_t{1} << 22;
  /// Richardson-extrapolate the doubling sequence of Cauchy sums. When off,
  /// the raw right-endpoint sum C_2k is returned.
  bool extrapolate = true;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    if (k_min == 0 || k_min > k_max)
      throw Error(ErrorCode::InvalidArgument, "need 1 <= k_min <= k_max");
  }

  auto key() const { return std::tuple(abs_tol, rel_tol, k_min, k_max, extrapolate); }
};

struct IntegralResult {
  Complex value{};
  std::size_t partitions_used = 0;
  /// Magnitude of the last refinement delta; a heuristic, not a bound.
  double est_error = 0.0;
  bool converged = true;
};

/// C(P, f) = sum_i f(a_i) (a_i - a_{i-1}) with the right endpoint a_i as the
/// sample point.
template <ComplexFunction F>
Complex cauchy_sum(const F& f, const Segment& s, const Partition& p) {
  const auto ts = p.points();
  Complex sum{};
  Complex prev = s.point(ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const Complex cur = s.point(ts[i]);
    Complex value;
    try {
      value = f(cur);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::EvalAtSingularity)
        throw Error(ErrorCode::SingularityOnContour, e.what());
      throw;
    }
    sum += value * (cur - prev);
    prev = cur;
  }
  return sum;
}

namespace detail {

template <ComplexFunction F>
void require_clear_contour(const F& f, const Segment& s) {
  for (Complex x : f.singularities())
    if (s.distance_to(x) < kContourClearance)
      throw Error(ErrorCode::SingularityOnContour,
                  "singularity " + fmt_num(x.real()) + "," + fmt_num(x.imag()) +
                      " lies on the segment");
}

// Richardson exponents for the right-endpoint rule: the error expands in
// h, h^2, h^4, h^6, ...
inline double richardson_factor(std::size_t column) {
  const int p = column == 1 ? 1 : 2 * static_cast<int>(column - 1);
  return std::ldexp(1.0, p) - 1.0;
}

inline constexpr std::size_t kMaxColumns = 8;

}  // namespace detail

/// Limit of equipartition Cauchy sums over the segment. k doubles from
/// cfg.k_min; each level reuses the previous sample points. Stops when two
/// successive estimates differ by at most abs_tol + rel_tol * |estimate|.
template <ComplexFunction F>
IntegralResult segment_integral(const F& f, const Segment& s, const RefinementConfig& cfg = {}) {
  cfg.validate();
  detail::require_clear_contour(f, s);

  const Complex d = s.delta();
  std::size_t k = cfg.k_min;
  auto sample = [&](std::size_t i) {
    return f(s.point(static_cast<double>(i) / static_cast<double>(k)));
  };

  Complex total{};
  for (std::size_t i = 1; i <= k; ++i) total += sample(i);
  Complex c = total * d / static_cast<double>(k);

  std::vector<Complex> row{c};
  Complex best = c;
  double delta = std::numeric_limits<double>::infinity();
  const std::size_t min_levels = cfg.extrapolate ? 2 : 1;

  for (std::size_t level = 1;; ++level) {
    if (k > cfg.k_max / 2) return {best, k, delta, false};
    k *= 2;
    Complex odd{};
    for (std::size_t i = 1; i < k; i += 2) odd += sample(i);
    c = 0.5 * c + odd * d / static_cast<double>(k);

    std::vector<Complex> next{c};
    if (cfg.extrapolate) {
      const std::size_t cols = std::min(level, detail::kMaxColumns);
      for (std::size_t j = 1; j <= cols; ++j)
        next.push_back(next[j - 1] + (next[j - 1] - row[j - 1]) / detail::richardson_factor(j));
    }
    const Complex estimate = next.back();
    delta = std::abs(estimate - best);
    best = estimate;
    row = std::move(next);
    if (level >= min_levels && delta <= cfg.abs_tol + cfg.rel_tol * std::abs(best))
      return {best, k, delta, true};
  }
}

/// The four side integrals a->b, b->c, c->d, d->a.
template <ComplexFunction F>
std::array<IntegralResult, 4> rectangle_sides(const F& f, const Rectangle& r,
                                              const RefinementConfig& cfg = {}) {
  const auto v = r.vertices();
  return {segment_integral(f, Segment(v[0], v[1]), cfg),
          segment_integral(f, Segment(v[1], v[2]), cfg),
          segment_integral(f, Segment(v[2], v[3]), cfg),
          segment_integral(f, Segment(v[3], v[0]), cfg)};
}

template <ComplexFunction F>
IntegralResult rectangle_integral(const F& f, const Rectangle& r,
                                  const RefinementConfig& cfg = {}) {
  IntegralResult out{{}, 0, 0.0, true};
  for (const auto& side : rectangle_sides(f, r, cfg)) {
    out.value += side.value;
    out.partitions_used = std::max(out.partitions_used, side.partitions_used);
    out.est_error += side.est_error;
    out.converged = out.converged && side.converged;
  }
  return out;
}

/// The square with vertices +-1 +-i.
inline Rectangle rho_square() { return {-1.0, 1.0, -1.0, 1.0}; }

/// rho = integral of 1/z over the boundary of the square +-1 +-i, computed
/// (not hard-coded) and cached per configuration.
inline Complex rho(const RefinementConfig& cfg = {}) {
  cfg.validate();
  static std::mutex mutex;
  static std::map<decltype(cfg.key()), Complex> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(cfg.key()); it != cache.end()) return it->second;
  }
  const auto inv = analytic([](Complex z) { return 1.0 / z; }, {Complex{}});
  const IntegralResult r = rectangle_integral(inv, rho_square(), cfg);
  if (!r.converged) throw Error(ErrorCode::NoConvergence, "rho did not converge");
  if (!(r.value.imag() >= 4.0))
    throw Error(ErrorCode::NoConvergence, "rho violates im(rho) >= 4");
  std::lock_guard lock(mutex);
  cache.emplace(cfg.key(), r.value);
  return r.value;
}

/// A rectangle whose interior contains every declared singularity: the
/// bounding box of X grown by 1 on each side, or the unit square centered at
/// the origin when X is empty.
template <ComplexFunction F>
Rectangle default_enclosure(const F& f) {
  const auto xs = f.singularities();
  if (xs.empty()) return {-0.5, 0.5, -0.5, 0.5};
  double re_lo = xs[0].real(), re_hi = re_lo, im_lo = xs[0].imag(), im_hi = im_lo;
  for (Complex x : xs) {
    re_lo = std::min(re_lo, x.real());
    re_hi = std::max(re_hi, x.real());
    im_lo = std::min(im_lo, x.imag());
    im_hi = std::max(im_hi, x.imag());
  }
  return {re_lo - 1.0, re_hi + 1.0, im_lo - 1.0, im_hi + 1.0};
}

/// The rectangle-independent functional: the boundary integral over any
/// rectangle whose interior contains the singularity set.
template <ComplexFunction F>
IntegralResult functional_integral(const F& f, const RefinementConfig& cfg = {}) {
  return rectangle_integral(f, default_enclosure(f), cfg);
}

struct QuarteringStep {
  Rectangle rect;
  Complex integral;
};

/// Nested quartering that always keeps the quarter with the largest |integral|
/// (first in SW, SE, NW, NE order on ties). Returns R_0 ... R_depth.
template <ComplexFunction F>
std::vector<QuarteringStep> goursat_trace(const F& f, const Rectangle& r, unsigned depth,
                                          const RefinementConfig& cfg = {}) {
  if (depth == 0) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  std::vector<QuarteringStep> trace;
  trace.push_back({r, rectangle_integral(f, r, cfg).value});
  for (unsigned n = 0; n < depth; ++n) {
    std::optional<QuarteringStep> pick;
    for (const auto& q : quarters(trace.back().rect)) {
      const Complex v = rectangle_integral(f, q, cfg).value;
      if (!pick || std::abs(v) > std::abs(pick->integral)) pick = QuarteringStep{q, v};
    }
    trace.push_back(*pick);
  }
  return trace;
}

}  // namespace cauchy
