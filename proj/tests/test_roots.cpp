#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cauchy/funcspec.hpp"
#include "cauchy/roots.hpp"
#include "support.hpp"

using namespace cauchy;
using testing_support::Gen;

namespace {

long report_sum(const PreimageReport& r) {
  long s = 0;
  for (const auto& c : r.boxes) s += c.winding;
  for (const auto& c : r.residual) s += c.winding;
  return s;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

// Monic polynomial with the given roots, as a closure and as parsed text.
auto from_roots(const std::vector<Complex>& roots) {
  return analytic([roots](Complex z) {
    Complex v = 1.0;
    for (Complex r : roots) v *= z - r;
    return v;
  });
}

}  // namespace

TEST_CASE("preimage counts") {
  const Rectangle big(-2, 2, -2, 2), unit(-1, 1, -1, 1);
  const FunctionSpec quad = parse("z^2 - 1"), cube = parse("z^3");
  CHECK(count_preimages(quad, big, 0.0) == 2);
  CHECK(count_preimages(cube, unit, 0.0) == 3);
  CHECK(winding_number_lifted(compose(quad, boundary_circuit(big)), 0.0, 1 << 15) == 2);
  CHECK(winding_number_lifted(compose(cube, boundary_circuit(unit)), 0.0, 1 << 15) == 3);
  CHECK(count_preimages(parse("exp(z)"), unit, Complex(10, 0)) == 0);
  CHECK(count_preimages(quad, Rectangle(0.5, 1.5, -0.5, 0.5), 0.0) == 1);
}

TEST_CASE("boundary hits value") {
  CHECK(code_of([] { count_preimages(parse("z^2 - 1"), Rectangle(1, 2, -1, 1), 0.0); }) ==
        ErrorCode::BoundaryHitsValue);
  CHECK(code_of([] { count_preimages(parse("z"), Rectangle(-1, 1, -1, 1), Complex(1, 0)); }) ==
        ErrorCode::BoundaryHitsValue);
}

TEST_CASE("locating the roots of z^2 - 1") {
  const PreimageReport r = locate_preimages(parse("z^2 - 1"), Rectangle(-2, 2, -2, 2), 0.0, 1e-3);
  CHECK(r.total_winding == 2);
  CHECK(r.residual.empty());
  REQUIRE(r.boxes.size() == 2);
  CHECK(report_sum(r) == r.total_winding);
  for (const auto& b : r.boxes) {
    CHECK(b.winding == 1);
    CHECK(b.rect.diameter() <= 1e-3);
  }
  const bool plus = r.boxes[0].rect.contains(1.0) || r.boxes[1].rect.contains(1.0);
  const bool minus = r.boxes[0].rect.contains(-1.0) || r.boxes[1].rect.contains(-1.0);
  CHECK(plus);
  CHECK(minus);
}

TEST_CASE("a triple root is one box of winding 3") {
  const PreimageReport r = locate_preimages(parse("z^3"), Rectangle(-1, 1, -1, 1), 0.0, 1e-2);
  CHECK(r.total_winding == 3);
  CHECK(report_sum(r) == 3);
  CHECK(r.residual.empty());
  REQUIRE(r.boxes.size() == 1);
  CHECK(r.boxes[0].winding == 3);
  CHECK(r.boxes[0].rect.diameter() <= 1e-2);
  CHECK(r.boxes[0].rect.contains(0.0));
  CHECK(count_preimages(parse("z^3"), r.boxes[0].rect, 0.0) == 3);
  CHECK(winding_number_lifted(compose(parse("z^3"), boundary_circuit(r.boxes[0].rect)), 0.0, 1 << 12) == 3);
}

TEST_CASE("a triple root below the clearance scale stays residual") {
  // |z^3| on a box of diameter 1e-3 around 0 is below the 1e-9 guard, so the
  // last countable cell is kept whole.
  const PreimageReport r = locate_preimages(parse("z^3"), Rectangle(-1, 1, -1, 1), 0.0, 1e-3);
  CHECK(report_sum(r) == 3);
  CHECK(r.boxes.empty());
  REQUIRE(r.residual.size() == 1);
  CHECK(r.residual[0].winding == 3);
  CHECK(r.residual[0].rect.contains(0.0));
  CHECK(r.residual[0].rect.diameter() < 1e-2);
}

TEST_CASE("nothing to find") {
  const PreimageReport r = locate_preimages(parse("z^2 - 1"), Rectangle(-2, 2, -2, 2), Complex(50, 0), 1e-3);
  CHECK(r.total_winding == 0);
  CHECK(r.boxes.empty());
  CHECK(r.residual.empty());
}

TEST_CASE("additivity audit on random polynomials") {
  Gen gen(1);
  const Rectangle box(-2, 2, -2, 2);
  for (int n = 0; n < 25; ++n) {
    const int degree = gen.integer(1, 5);
    std::vector<Complex> roots;
    for (int k = 0; k < degree; ++k) roots.push_back(gen.point(box.scaled(0.8)));
    const auto f = from_roots(roots);
    const Complex p = gen.in_disc(1e-3);
    long count = -1;
    try {
      count = count_preimages(f, box, p);
    } catch (const Error&) {
      continue;
    }
    CHECK(count == degree);
    const PreimageReport r = locate_preimages(f, box, p, 1e-2);
    CHECK(r.total_winding == count);
    CHECK(report_sum(r) == count);
  }
}

TEST_CASE("open mapping spot check") {
  Gen gen(2);
  const FunctionSpec f = parse("z^3 - 2*z + 1 + exp(z)/4");
  const Rectangle r(-2, 2, -2, 2);
  for (const Complex p : {Complex(0, 0), Complex(0.5, 0.5), Complex(-1, 2)}) {
    const long base = count_preimages(f, r, p);
    if (base == 0) continue;
    for (int n = 0; n < 20; ++n) {
      const Complex q = p + gen.in_disc(1e-3);
      CHECK(count_preimages(f, r, q) == base);
    }
  }
}

TEST_CASE("local degree") {
  CHECK(local_degree(parse("exp(z)"), 0.0) == 1);
  Gen gen(3);
  for (int n = 0; n < 10; ++n) CHECK(local_degree(parse("3*z + 7"), gen.in_disc(5)) == 1);
  CHECK(local_degree(parse("1/(z-1)"), Complex(0.9, 0)) == 1);
  CHECK(local_degree(parse("z^2"), Complex(0.3, 0.2)) == 1);
  CHECK(code_of([] { local_degree(parse("z^2"), 0.0); }) == ErrorCode::DerivativeTooSmall);
}
