#pragma once

// Seeded generators for the property tests. Each TEST_CASE builds its own
// Gen from a fixed seed so failures reproduce exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cauchy/geometry.hpp"

namespace testing_support {

using cauchy::Complex;
using cauchy::Rectangle;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Complex point(const Rectangle& r) { return {uniform(r.re_lo(), r.re_hi()), uniform(r.im_lo(), r.im_hi())}; }

  Complex in_disc(double radius = 1.0) {
    return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi));
  }

  Rectangle rect_inside(const Rectangle& box, double min_side) {
    const double w = uniform(min_side, box.width()), h = uniform(min_side, box.height());
    const double x = uniform(box.re_lo(), box.re_hi() - w);
    const double y = uniform(box.im_lo(), box.im_hi() - h);
    return {x, x + w, y, y + h};
  }

  /// Sorted cut list lo = c_0 < ... < c_n = hi with up to `extra` interior cuts.
  std::vector<double> cuts(double lo, double hi, int extra) {
    std::vector<double> c{lo, hi};
    for (int k = integer(0, extra); k > 0; --k) c.push_back(uniform(lo, hi));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

 private:
  std::mt19937_64 rng_;
};

inline Complex horner(const std::vector<Complex>& coeffs, Complex z) {
  Complex v{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
  return v;
}

}  // namespace testing_support
