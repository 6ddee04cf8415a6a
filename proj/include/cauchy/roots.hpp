#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/funcspec.hpp"
#include "cauchy/geometry.hpp"
#include "cauchy/integrate.hpp"
#include "cauchy/winding.hpp"

namespace cauchy {

/// Sampled |f - p| on a cell boundary at or below this means p ∈ f(∂R).
inline constexpr double kBoundaryValueClearance = 1e-9;
inline constexpr std::size_t kBoundaryGuardSamples = 4096;

struct WeightedCell {
  Rectangle rect;
  long winding;
};

struct PreimageReport {
  long total_winding = 0;
  std::vector<WeightedCell> boxes;
  /// Cells that could not be split cleanly; their windings still count.
  std::vector<WeightedCell> residual;
};

/// Winding of f o phi_R about p: the multiplicity-weighted number of
/// solutions of f(z) = p inside R when f is holomorphic there.
template <ComplexFunction F>
long count_preimages(const F& f, const Rectangle& r, Complex p, const RefinementConfig& cfg = {}) {
  const LoopPath circuit = boundary_circuit(r);
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < kBoundaryGuardSamples; ++j)
    closest = std::min(closest, std::abs(f(circuit(static_cast<double>(j) /
                                                   static_cast<double>(kBoundaryGuardSamples))) -
                                         p));
  if (closest <= kBoundaryValueClearance)
    throw Error(ErrorCode::BoundaryHitsValue,
                "|f - p| drops to " + detail::fmt_num(closest) + " on the rectangle boundary");
  return winding_number(compose(f, circuit), p, cfg).value;
}

namespace detail {

inline constexpr double kInflation = 1.5;
// Off-center split points tried when the midpoint cuts run through a preimage.
inline constexpr std::array<double, 4> kShiftedCuts = {0.4637, 0.5381, 0.4119, 0.5873};

inline std::array<Rectangle, 4> split_at(const Rectangle& r, double fraction) {
  const double x = r.re_lo() + fraction * r.width();
  const double y = r.im_lo() + fraction * r.height();
  return {Rectangle(r.re_lo(), x, r.im_lo(), y), Rectangle(x, r.re_hi(), r.im_lo(), y),
          Rectangle(r.re_lo(), x, y, r.im_hi()), Rectangle(x, r.re_hi(), y, r.im_hi())};
}

template <ComplexFunction F>
std::optional<long> try_count(const F& f, const Rectangle& r, Complex p,
                              const RefinementConfig& cfg) {
  try {
    return count_preimages(f, r, p, cfg);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Children of `cell` whose windings sum to `parent`, or nothing. Quarters
// whose boundary is unusable are replaced by their 1.5x inflation.
template <ComplexFunction F>
std::optional<std::vector<WeightedCell>> audited_children(const F& f, const Rectangle& cell,
                                                          long parent, Complex p,
                                                          const RefinementConfig& cfg) {
  auto audit = [&](const std::array<Rectangle, 4>& parts,
                   bool inflate) -> std::optional<std::vector<WeightedCell>> {
    std::vector<WeightedCell> kids;
    long sum = 0;
    for (const auto& part : parts) {
      std::optional<long> w = try_count(f, part, p, cfg);
      Rectangle used = part;
      if (!w && inflate) {
        used = part.scaled(kInflation);
        w = try_count(f, used, p, cfg);
      }
      if (!w) return std::nullopt;
      sum += *w;
      if (*w != 0) kids.push_back({used, *w});
    }
    if (sum != parent) return std::nullopt;
    return kids;
  };
  if (auto kids = audit(quarters(cell), true)) return kids;
  for (double fraction : kShiftedCuts)
    if (auto kids = audit(split_at(cell, fraction), false)) return kids;
  return std::nullopt;
}

}  // namespace detail

/// Isolates the preimages of p in R by quartering cells with nonzero winding
/// until their diameter is at most min_size. Every split is audited: the
/// child windings must add up to the parent's, so the report's windings
/// always sum to total_winding. Cells that cannot be split cleanly (even
/// after inflation and off-center cuts) end up in `residual`.
template <ComplexFunction F>
PreimageReport locate_preimages(const F& f, const Rectangle& r, Complex p, double min_size,
                                const RefinementConfig& cfg = {}) {
  if (!(min_size > 0.0)) throw Error(ErrorCode::InvalidArgument, "min_size must be positive");
  PreimageReport report;
  report.total_winding = count_preimages(f, r, p, cfg);
  std::vector<WeightedCell> stack;
  if (report.total_winding != 0) stack.push_back({r, report.total_winding});
  while (!stack.empty()) {
    const WeightedCell cell = stack.back();
    stack.pop_back();
    if (cell.rect.diameter() <= min_size) {
      report.boxes.push_back(cell);
      continue;
    }
    auto kids = detail::audited_children(f, cell.rect, cell.winding, p, cfg);
    if (!kids) {
      report.residual.push_back(cell);
      continue;
    }
    for (auto it = kids->rbegin(); it != kids->rend(); ++it) stack.push_back(*it);
  }
  return report;
}

/// Winding of f o phi_S about f(z0) for squares S centered at z0, halving the
/// side until two consecutive values agree.
inline long local_degree(const FunctionSpec& f, Complex z0, const RefinementConfig& cfg = {}) {
  const Complex slope = eval(differentiate(f), z0);
  if (!(std::abs(slope) > 1e-9))
    throw Error(ErrorCode::DerivativeTooSmall, "|f'(z0)| = " + detail::fmt_num(std::abs(slope)));
  const Complex value = f(z0);
  double h = 1.0;
  for (Complex x : f.singularities()) h = std::min(h, 0.5 * std::abs(x - z0));
  std::optional<long> previous;
  for (int iter = 0; iter < 40; ++iter, h *= 0.5) {
    std::optional<long> w;
    try {
      w = count_preimages(f, Rectangle::square(z0, h), value, cfg);
    } catch (const Error&) {
    }
    if (w && previous && *w == *previous) return *w;
    previous = w;
  }
  throw Error(ErrorCode::NoStabilization, "local degree did not stabilize");
}

}  // namespace cauchy
