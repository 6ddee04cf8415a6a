#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/geometry.hpp"
#include "cauchy/integrate.hpp"

namespace cauchy {

/// Minimum distance between an evaluation point and the contour.
inline constexpr double kInteriorClearance = 1e-6;

struct SeriesResult {
  std::vector<Complex> coeffs;  // a_0 ... a_N
  double radius_hint = 0.0;
};

namespace detail {

inline void require_interior_point(Complex a, const Rectangle& r) {
  if (!r.contains_in_interior(a) || r.boundary_distance(a) < kInteriorClearance)
    throw Error(ErrorCode::PointTooCloseToBoundary,
                "point " + fmt_num(a.real()) + "," + fmt_num(a.imag()) +
                    " is not at least 1e-6 inside the rectangle");
}

template <ComplexFunction F>
void require_holomorphic_on(const F& f, const Rectangle& r) {
  for (Complex x : f.singularities())
    if (r.contains(x))
      throw Error(ErrorCode::SingularityInRegion,
                  "declared singularity " + fmt_num(x.real()) + "," + fmt_num(x.imag()) +
                      " lies in the rectangle");
}

/// (1/rho) * integral over the boundary of f(z) / (z - a)^power.
template <ComplexFunction F>
Complex normalized_moment(const F& f, Complex a, unsigned power, const Rectangle& r,
                          const RefinementConfig& cfg) {
  std::vector<Complex> sing(f.singularities().begin(), f.singularities().end());
  sing.push_back(a);
  const auto integrand = analytic(
      [&f, a, power](Complex z) {
        Complex den{1.0, 0.0};
        for (unsigned k = 0; k < power; ++k) den *= z - a;
        return f(z) / den;
      },
      std::move(sing));
  const IntegralResult res = rectangle_integral(integrand, r, cfg);
  if (!res.converged)
    throw Error(ErrorCode::NoConvergence,
                "boundary integral did not converge (est_error " + fmt_num(res.est_error) + ")");
  return res.value / rho(cfg);
}

}  // namespace detail

/// f(a) reconstructed from boundary values only.
template <ComplexFunction F>
Complex cauchy_value(const F& f, Complex a, const Rectangle& r, const RefinementConfig& cfg = {}) {
  detail::require_interior_point(a, r);
  detail::require_holomorphic_on(f, r);
  return detail::normalized_moment(f, a, 1, r, cfg);
}

/// f'(a) reconstructed from boundary values only.
template <ComplexFunction F>
Complex cauchy_derivative(const F& f, Complex a, const Rectangle& r,
                          const RefinementConfig& cfg = {}) {
  detail::require_interior_point(a, r);
  detail::require_holomorphic_on(f, r);
  return detail::normalized_moment(f, a, 2, r, cfg);
}

/// Power-series coefficients about 0, a_n = (1/rho) * integral f(z) / z^(n+1).
template <ComplexFunction F>
SeriesResult series_coefficients(const F& f, unsigned order, const Rectangle& r,
                                 const RefinementConfig& cfg = {}) {
  detail::require_interior_point(Complex{}, r);
  detail::require_holomorphic_on(f, r);
  SeriesResult out;
  out.coeffs.reserve(order + 1);
  for (unsigned n = 0; n <= order; ++n)
    out.coeffs.push_back(detail::normalized_moment(f, Complex{}, n + 1, r, cfg));
  out.radius_hint = r.boundary_distance(Complex{});
  return out;
}

/// Empirical modulus max |f'(z) - (f(z) - f(x)) / (z - x)| over `samples`
/// random pairs z, x in S with |z - x| < delta, where f' comes from the
/// boundary formula on R. The pairs are a deterministic function of `seed`
/// and delta.
template <ComplexFunction F>
double derivative_continuity_modulus(const F& f, const Rectangle& s, const Rectangle& r,
                                     double delta, unsigned samples,
                                     const RefinementConfig& cfg = {},
                                     std::uint64_t seed = 0x5eedULL) {
  if (!(delta > 0.0) || samples == 0)
    throw Error(ErrorCode::InvalidArgument, "delta and samples must be positive");
  if (!r.contains(s) || r.boundary_distance(s.vertices()[0]) < kInteriorClearance ||
      r.boundary_distance(s.vertices()[2]) < kInteriorClearance)
    throw Error(ErrorCode::PointTooCloseToBoundary, "S must lie in the interior of R");
  detail::require_holomorphic_on(f, r);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double modulus = 0.0;
  for (unsigned i = 0; i < samples; ++i) {
    Complex z, x;
    do {
      z = {s.re_lo() + s.width() * unit(rng), s.im_lo() + s.height() * unit(rng)};
      const double radius = delta * unit(rng);
      const double angle = 2.0 * std::numbers::pi * unit(rng);
      x = z + std::polar(radius, angle);
    } while (!s.contains(x) || x == z);
    const Complex quotient = (f(z) - f(x)) / (z - x);
    modulus = std::max(modulus, std::abs(cauchy_derivative(f, z, r, cfg) - quotient));
  }
  return modulus;
}

}  // namespace cauchy
