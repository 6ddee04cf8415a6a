#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cauchy/cover.hpp"
#include "cauchy/error.hpp"
#include "cauchy/formulas.hpp"
#include "cauchy/funcspec.hpp"
#include "cauchy/geometry.hpp"
#include "cauchy/integrate.hpp"
#include "cauchy/roots.hpp"
#include "cauchy/winding.hpp"

namespace cauchy::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CriterionResult> criteria;

  bool passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
  }

  /// One line per criterion followed by a summary line.
  std::string text() const {
    std::string out;
    std::size_t ok = 0;
    for (const auto& c : criteria) {
      ok += c.passed ? 1 : 0;
      out += (c.passed ? "PASS " : "FAIL ") + std::to_string(c.id) + " " + c.name + ": " +
             c.detail + "\n";
    }
    out += std::to_string(ok) + "/" + std::to_string(criteria.size()) + " criteria passed\n";
    return out;
  }
};

namespace detail {

using cauchy::detail::fmt_num;

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Independent stream per criterion so that adding draws to one criterion
// does not shift the others.
inline std::mt19937_64 stream(std::uint64_t seed, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return std::mt19937_64(seq);
}

class Draw {
 public:
  explicit Draw(std::mt19937_64 rng) : rng_(rng) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex in_disc(double radius = 1.0) {
    return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi));
  }
  Complex in_rect(const Rectangle& r) {
    return {uniform(r.re_lo(), r.re_hi()), uniform(r.im_lo(), r.im_hi())};
  }
  /// Random rectangle inside `box` with sides at least `min_side`.
  Rectangle rect_inside(const Rectangle& box, double min_side) {
    const double w = uniform(min_side, box.width()), h = uniform(min_side, box.height());
    const double x = uniform(box.re_lo(), box.re_hi() - w), y = uniform(box.im_lo(), box.im_hi() - h);
    return {x, x + w, y, y + h};
  }

 private:
  std::mt19937_64 rng_;
};

inline Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex v{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

inline CriterionResult rho_reproduction() {
  const RefinementConfig cfg;
  const Complex r = rho(cfg);
  const auto sides = rectangle_sides(analytic([](Complex z) { return 1.0 / z; }, {Complex{}}),
                                     rho_square(), cfg);
  const double err = std::abs(r - Complex(0.0, 2.0 * std::numbers::pi));
  double side_err = 0.0;
  for (const auto& s : sides) side_err = std::max(side_err, std::abs(s.value - r / 4.0));
  const bool ok = r.imag() >= 4.0 && err <= 1e-8 && side_err <= 1e-8 && sides[0].value.imag() >= 1.0;
  return {1, "rho reproduction", ok,
          "im(rho)=" + fmt_num(r.imag()) + " |rho-2pi i|=" + sci(err) +
              " max|side-rho/4|=" + sci(side_err) + " im(bottom)=" + fmt_num(sides[0].value.imag())};
}

inline CriterionResult cauchy_theorem(std::uint64_t seed) {
  Draw draw(stream(seed, 2));
  const Rectangle box(-2.0, 2.0, -2.0, 2.0);
  double worst = 0.0;
  int cases = 0;
  for (int n = 0; n < 200; ++n, ++cases) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(draw.integer(0, 6)) + 1);
    for (auto& c : coeffs) c = draw.in_disc();
    const auto f = analytic([coeffs](Complex z) { return horner(coeffs, z); });
    worst = std::max(worst, std::abs(rectangle_integral(f, draw.rect_inside(box, 0.05)).value));
  }
  const std::vector<std::string> entire = {"exp(z)",        "sin(z)",        "cos(z)",
                                           "exp(z)*sin(z)", "sin(z)*cos(z)", "exp(z)*cos(z)*sin(z)"};
  for (const auto& src : entire) {
    const FunctionSpec f = parse(src);
    for (int n = 0; n < 10; ++n, ++cases)
      worst = std::max(worst, std::abs(rectangle_integral(f, draw.rect_inside(box, 0.05)).value));
  }
  return {2, "Cauchy's theorem", worst <= 1e-8,
          std::to_string(cases) + " integrands, max|integral|=" + sci(worst)};
}

inline CriterionResult rectangle_independence(std::uint64_t seed) {
  Draw draw(stream(seed, 3));
  const Complex r = rho();
  double spread = 0.0, off_rho = 0.0;
  for (int n = 0; n < 20; ++n) {
    const Complex a = draw.in_rect({-1.0, 1.0, -1.0, 1.0});
    const auto f = analytic([a](Complex z) { return 1.0 / (z - a); }, {a});
    Complex v[2];
    for (auto& value : v) {
      const Rectangle enc(a.real() - draw.uniform(0.2, 2.0), a.real() + draw.uniform(0.2, 2.0),
                          a.imag() - draw.uniform(0.2, 2.0), a.imag() + draw.uniform(0.2, 2.0));
      value = rectangle_integral(f, enc).value;
      off_rho = std::max(off_rho, std::abs(value - r));
    }
    spread = std::max(spread, std::abs(v[0] - v[1]));
  }
  return {3, "rectangle independence", spread <= 1e-8 && off_rho <= 1e-8,
          "max|I1-I2|=" + sci(spread) + " max|I-rho|=" + sci(off_rho)};
}

inline CriterionResult cauchy_formulas(std::uint64_t seed) {
  Draw draw(stream(seed, 4));
  const Rectangle r(-1.5, 1.5, -1.5, 1.5);
  const Rectangle inner = r.scaled(0.6);
  double value_err = 0.0, deriv_err = 0.0;
  for (const char* src : {"exp(z)", "z^3 - 2*z + 1", "sin(z)*exp(z)", "cos(2*z)"}) {
    const FunctionSpec f = parse(src);
    const FunctionSpec df = differentiate(f);
    for (int n = 0; n < 100; ++n) {
      const Complex a = draw.in_rect(inner);
      value_err = std::max(value_err, std::abs(cauchy_value(f, a, r) - f(a)));
      deriv_err = std::max(deriv_err, std::abs(cauchy_derivative(f, a, r) - df(a)));
    }
  }
  const auto series = series_coefficients(parse("exp(z)"), 8, {-1.0, 1.0, -1.0, 1.0});
  double series_err = 0.0, factorial = 1.0;
  for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
    if (n > 0) factorial *= static_cast<double>(n);
    series_err = std::max(series_err, std::abs(series.coeffs[n] - 1.0 / factorial));
  }
  const bool ok = value_err <= 1e-6 && deriv_err <= 1e-6 && series_err <= 1e-6;
  return {4, "Cauchy formulas", ok,
          "max value err=" + sci(value_err) + " max derivative err=" + sci(deriv_err) +
              " max series err=" + sci(series_err)};
}

inline LoopPath circle_loop(long n, Complex scale) {
  const FunctionSpec g = parse("cos(2*pi*" + std::to_string(n) + "*t) + i*sin(2*pi*" +
                                   std::to_string(n) + "*t)",
                               "t");
  return LoopPath([g, scale](double t) { return scale * g(Complex(t, 0.0)); });
}

inline CriterionResult winding_suite() {
  const Complex p{};
  const Rectangle square(-1.0, 1.0, -1.0, 1.0);
  const LoopPath circuit = boundary_circuit(square);
  const Complex start = circuit(0.0);
  std::vector<std::string> failures;
  std::size_t checks = 0;
  auto expect = [&](const std::string& label, const LoopPath& f, long want) {
    ++checks;
    try {
      const long w = winding_number(f, p).value;
      const long lifted = winding_number_lifted(f, p, 1 << 14);
      if (w != want || lifted != want)
        failures.push_back(label + " gave " + std::to_string(w) + "/" + std::to_string(lifted));
    } catch (const Error& e) {
      failures.push_back(label + " threw " + std::string(to_string(e.code())));
    }
  };

  expect("circuit", circuit, 1);
  expect("constant", LoopPath([start](double) { return start; }), 0);
  for (long n = -3; n <= 3; ++n) expect("trig n=" + std::to_string(n), circle_loop(n, start), n);
  for (long m = -2; m <= 2; ++m)
    for (long n = -2; n <= 2; ++n)
      expect("product " + std::to_string(m) + "*" + std::to_string(n),
             loop_product(circle_loop(m, start), circle_loop(n, start)), m + n);
  expect("circuit*trig3", loop_product(circuit, circle_loop(3, start)), 4);
  expect("reversed circuit", loop_reverse(circuit), -1);
  for (long n = -3; n <= 3; ++n) {
    expect("reversed trig n=" + std::to_string(n), loop_reverse(circle_loop(n, start)), -n);
    expect("shifted trig n=" + std::to_string(n), loop_shift(circle_loop(n, start), 0.3719), n);
  }
  expect("shifted circuit", loop_shift(circuit, 0.6123), 1);
  expect("double reversal", loop_reverse(loop_reverse(circuit)), 1);

  std::string detail = std::to_string(checks) + " loops checked against both engines";
  for (const auto& f : failures) detail += "; " + f;
  return {5, "winding suite", failures.empty(), detail};
}

inline CriterionResult component_constancy(std::uint64_t seed) {
  Draw draw(stream(seed, 6));
  const Rectangle r(0.0, 1.0, 0.0, 1.0);
  const LoopPath circuit = boundary_circuit(r);
  int inside_ok = 0, outside_ok = 0;
  for (int n = 0; n < 50; ++n) {
    Complex q;
    do q = draw.in_rect(r); while (!r.contains_in_interior(q));
    inside_ok += winding_number(circuit, q).value == 1 ? 1 : 0;
  }
  for (int n = 0; n < 50; ++n) {
    Complex q;
    do q = draw.in_rect({-1.0, 2.0, -1.0, 2.0}); while (r.contains(q));
    outside_ok += winding_number(circuit, q).value == 0 ? 1 : 0;
  }
  return {6, "component constancy", inside_ok == 50 && outside_ok == 50,
          "interior w=1: " + std::to_string(inside_ok) + "/50, exterior w=0: " +
              std::to_string(outside_ok) + "/50"};
}

inline long report_sum(const PreimageReport& rep) {
  long s = 0;
  for (const auto& b : rep.boxes) s += b.winding;
  for (const auto& b : rep.residual) s += b.winding;
  return s;
}

inline CriterionResult argument_principle() {
  const Rectangle big(-2.0, 2.0, -2.0, 2.0), unit(-1.0, 1.0, -1.0, 1.0);
  const FunctionSpec quad = parse("z^2 - 1"), cube = parse("z^3");
  const long n_quad = count_preimages(quad, big, 0.0);
  const long n_cube = count_preimages(cube, unit, 0.0);

  const PreimageReport located = locate_preimages(quad, big, 0.0, 1e-3);
  const PreimageReport cubic = locate_preimages(cube, unit, 0.0, 1e-3);
  const PreimageReport none = locate_preimages(quad, big, Complex(50.0, 0.0), 1e-3);

  bool isolated = located.residual.empty() && located.boxes.size() == 2;
  for (const auto& b : located.boxes)
    isolated = isolated && b.winding == 1 && b.rect.diameter() <= 1e-3 &&
               (b.rect.contains(1.0) || b.rect.contains(-1.0));
  const bool both = std::any_of(located.boxes.begin(), located.boxes.end(),
                                [](const auto& b) { return b.rect.contains(1.0); }) &&
                    std::any_of(located.boxes.begin(), located.boxes.end(),
                                [](const auto& b) { return b.rect.contains(-1.0); });
  const bool audit = report_sum(located) == located.total_winding &&
                     report_sum(cubic) == cubic.total_winding &&
                     report_sum(none) == none.total_winding;
  const bool ok = n_quad == 2 && n_cube == 3 && isolated && both && audit &&
                  none.boxes.empty() && none.residual.empty();
  return {7, "argument principle", ok,
          "count(z^2-1)=" + std::to_string(n_quad) + " count(z^3)=" + std::to_string(n_cube) +
              " boxes=" + std::to_string(located.boxes.size()) +
              " residual=" + std::to_string(located.residual.size()) +
              " audit=" + (audit ? "exact" : "broken")};
}

inline CriterionResult maximum_modulus(std::uint64_t seed) {
  Draw draw(stream(seed, 8));
  const Rectangle box(-2.0, 2.0, -2.0, 2.0);
  int passed = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < 50; ++n) {
    std::function<Complex(Complex)> f;
    const Complex c = draw.in_disc(), d = draw.in_disc();
    std::vector<Complex> coeffs(static_cast<std::size_t>(draw.integer(1, 5)) + 1);
    for (auto& co : coeffs) co = draw.in_disc();
    switch (n % 5) {
      case 0: f = [coeffs](Complex z) { return horner(coeffs, z); }; break;
      case 1: f = [c, d](Complex z) { return std::exp(c * z + d); }; break;
      case 2: f = [c, coeffs](Complex z) { return std::sin(c * z) * horner(coeffs, z); }; break;
      case 3: f = [c, d](Complex z) { return std::cos(c * z) + std::exp(d * z); }; break;
      default: f = [c, coeffs](Complex z) { return std::exp(c * z) * horner(coeffs, z); }; break;
    }
    const Rectangle r = draw.rect_inside(box, 0.1);
    const auto v = r.vertices();
    double edge = 0.0;
    for (std::size_t s = 0; s < 4; ++s)
      for (int j = 0; j < 250; ++j)
        edge = std::max(edge, std::abs(f(v[s] + (v[(s + 1) % 4] - v[s]) * (j / 250.0))));
    double inner = 0.0;
    for (int i = 0; i < 101; ++i)
      for (int j = 0; j < 101; ++j)
        inner = std::max(inner, std::abs(f({r.re_lo() + r.width() * (i + 1) / 102.0,
                                            r.im_lo() + r.height() * (j + 1) / 102.0})));
    const double scale = std::max(1.0, edge);
    worst_excess = std::max(worst_excess, (inner - edge) / scale);
    passed += inner <= edge + 1e-6 * scale ? 1 : 0;
  }
  return {8, "maximum modulus", passed == 50,
          std::to_string(passed) + "/50 functions, max (interior-boundary)/scale=" +
              sci(worst_excess)};
}

inline CriterionResult derivative_continuity(std::uint64_t seed) {
  const FunctionSpec f = parse("exp(z)");
  const FunctionSpec f2 = differentiate(differentiate(f));
  const Rectangle s(-0.5, 0.5, -0.5, 0.5), r(-2.0, 2.0, -2.0, 2.0);
  double max_f2 = 0.0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j)
      max_f2 = std::max(max_f2, std::abs(f2({s.re_lo() + s.width() * i / 100.0,
                                             s.im_lo() + s.height() * j / 100.0})));
  constexpr double kNoise = 1e-8;
  bool bounded = true, monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  std::string moduli;
  for (double delta : {0.1, 0.05, 0.025, 0.0125}) {
    const double m = derivative_continuity_modulus(f, s, r, delta, 40, {}, seed);
    bounded = bounded && m <= max_f2 * delta + 1e-6;
    monotone = monotone && m <= previous + 2.0 * kNoise;
    previous = m;
    moduli += (moduli.empty() ? "" : ",") + sci(m);
  }
  return {9, "derivative continuity", bounded && monotone,
          "moduli=" + moduli + " max|f''|=" + fmt_num(max_f2)};
}

inline double area_sum(const std::vector<Rectangle>& family) {
  double s = 0.0;
  for (const auto& r : family) s += r.area();
  return s;
}

inline CriterionResult covering_lemma(std::uint64_t seed) {
  Draw draw(stream(seed, 10));
  const Rectangle unit(0.0, 1.0, 0.0, 1.0);
  std::vector<std::string> failures;

  // Midline of the unit square, covered by squares of diameter < 0.3.
  const SquarePredicate midline{
      [](const Rectangle& s) { return s.diameter() < 0.3; },
      [](const Rectangle& s) {
        return s.im_lo() <= 0.5 && 0.5 <= s.im_hi() ? SetMeet::Nonempty : SetMeet::Empty;
      }};
  std::vector<Rectangle> cover;
  try {
    cover = konig_finite_cover(unit, midline);
  } catch (const Error& e) {
    failures.push_back("midline threw " + std::string(to_string(e.code())));
  }
  std::vector<std::pair<double, double>> spans;
  for (const auto& s : cover) {
    if (!(s.diameter() < 0.3)) failures.push_back("midline square too large");
    spans.emplace_back(s.re_lo(), s.re_hi());
  }
  std::sort(spans.begin(), spans.end());
  double reach = 0.0;
  for (const auto& [lo, hi] : spans)
    if (lo <= reach) reach = std::max(reach, hi);
  if (cover.empty() || reach < 1.0) failures.push_back("midline not covered");
  if (!pairwise_disjoint_interiors(cover)) failures.push_back("midline interiors overlap");

  // The center of the square lies on a corner of a square at every depth.
  const Complex center(0.5, 0.5);
  const SquarePredicate pinned{
      [center](const Rectangle& s) { return !s.contains(center); },
      [center](const Rectangle& s) { return s.contains(center) ? SetMeet::Nonempty : SetMeet::Empty; }};
  bool exhausted = false;
  try {
    konig_finite_cover(unit, pinned, 12);
  } catch (const DepthExhausted<Rectangle>& e) {
    const auto& w = e.witness();
    exhausted = w.size() == 13;
    for (std::size_t i = 0; i < w.size(); ++i) {
      exhausted = exhausted && w[i].contains(center);
      if (i > 0) exhausted = exhausted && w[i - 1].contains(w[i]) && w[i - 1] != w[i];
    }
  }
  if (!exhausted) failures.push_back("no nested depth-exhausted witness");

  // Area inequalities on generated families.
  auto rel_le = [](double a, double b) { return a <= b * (1.0 + 1e-12); };
  std::size_t families = 0;
  if (!rel_le(area_sum(cover), unit.area())) failures.push_back("midline cover exceeds area");
  ++families;
  for (int n = 0; n < 100; ++n) {
    const Rectangle parent = draw.rect_inside({-3.0, 3.0, -3.0, 3.0}, 0.5);
    std::vector<double> xs{parent.re_lo(), parent.re_hi()}, ys{parent.im_lo(), parent.im_hi()};
    for (int k = draw.integer(0, 6); k > 0; --k) xs.push_back(draw.uniform(parent.re_lo(), parent.re_hi()));
    for (int k = draw.integer(0, 6); k > 0; --k) ys.push_back(draw.uniform(parent.im_lo(), parent.im_hi()));
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const auto cells = GridPartition(parent, xs, ys).cells();

    // Packing: a random subfamily of disjoint cells.
    std::vector<Rectangle> packing;
    for (const auto& c : cells)
      if (draw.integer(0, 1) == 1) packing.push_back(c);
    // Covering: every cell, each grown by a random factor, plus extras.
    std::vector<Rectangle> covering;
    for (const auto& c : cells) covering.push_back(c.scaled(draw.uniform(1.0, 1.5)));
    for (int k = draw.integer(0, 3); k > 0; --k) covering.push_back(draw.rect_inside(parent, 0.01));
    families += 3;

    if (std::abs(area_sum(cells) - parent.area()) > 1e-12 * parent.area() * static_cast<double>(cells.size()))
      failures.push_back("grid areas do not sum to parent");
    if (!pairwise_disjoint_interiors(packing) || !rel_le(area_sum(packing), parent.area()))
      failures.push_back("packing bound violated");
    if (!covers(covering, parent) || !rel_le(parent.area(), area_sum(covering)))
      failures.push_back("covering bound violated");
  }
  std::string detail = "midline cover " + std::to_string(cover.size()) + " squares, witness " +
                       (exhausted ? "nested" : "missing") + ", " + std::to_string(families) +
                       " area families";
  for (const auto& f : failures) detail += "; " + f;
  return {10, "covering lemma", failures.empty(), detail};
}

inline CriterionResult guarded(int id, const std::string& name,
                               const std::function<CriterionResult()>& run) {
  try {
    return run();
  } catch (const Error& e) {
    return {id, name, false, "threw " + std::string(to_string(e.code())) + ": " + e.what()};
  }
}

}  // namespace detail

/// Criteria 1 to 10 of the acceptance suite. The report text depends only on
/// `seed`.
inline Report run_suite(std::uint64_t seed) {
  using namespace detail;
  Report r;
  r.criteria.push_back(guarded(1, "rho reproduction", [] { return rho_reproduction(); }));
  r.criteria.push_back(guarded(2, "Cauchy's theorem", [&] { return cauchy_theorem(seed); }));
  r.criteria.push_back(
      guarded(3, "rectangle independence", [&] { return rectangle_independence(seed); }));
  r.criteria.push_back(guarded(4, "Cauchy formulas", [&] { return cauchy_formulas(seed); }));
  r.criteria.push_back(guarded(5, "winding suite", [] { return winding_suite(); }));
  r.criteria.push_back(
      guarded(6, "component constancy", [&] { return component_constancy(seed); }));
  r.criteria.push_back(guarded(7, "argument principle", [] { return argument_principle(); }));
  r.criteria.push_back(guarded(8, "maximum modulus", [&] { return maximum_modulus(seed); }));
  r.criteria.push_back(
      guarded(9, "derivative continuity", [&] { return derivative_continuity(seed); }));
  r.criteria.push_back(guarded(10, "covering lemma", [&] { return covering_lemma(seed); }));
  return r;
}

/// Criterion 11: two runs with the same seed give byte-identical reports.
inline CriterionResult determinism(std::uint64_t seed) {
  const std::string first = run_suite(seed).text();
  const std::string second = run_suite(seed).text();
  return {11, "determinism", first == second,
          first == second ? "two runs byte-identical (" + std::to_string(first.size()) + " bytes)"
                          : "reports differ"};
}

}  // namespace cauchy::verify
