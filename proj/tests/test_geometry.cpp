#include <catch_amalgamated.hpp>

#include "cauchy/geometry.hpp"
#include "support.hpp"

using namespace cauchy;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testing_support::Gen;

namespace {

bool same(Complex a, Complex b, double tol = 1e-15) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("area of reference rectangles") {
  CHECK(area(Rectangle(0, 1, 0, 1)) == 1.0);
  CHECK(area(Rectangle(-1, 1, -1, 1)) == 4.0);
  CHECK(area(Rectangle(0.5, 2.0, -1.0, 3.0)) == 6.0);
}

TEST_CASE("degenerate and non-finite rectangles are rejected") {
  CHECK_THROWS_AS(Rectangle(0, 0, 0, 1), Error);
  CHECK_THROWS_AS(Rectangle(1, 0, 0, 1), Error);
  CHECK_THROWS_AS(Rectangle(0, 1, 2, 2), Error);
  CHECK_THROWS_AS(Rectangle(0, INFINITY, 0, 1), Error);
  CHECK_THROWS_AS(Rectangle(NAN, 1, 0, 1), Error);
}

TEST_CASE("vertices run counter-clockwise from the lower-left corner") {
  const auto v = Rectangle(-1, 2, -3, 4).vertices();
  CHECK(v[0] == Complex(-1, -3));
  CHECK(v[1] == Complex(2, -3));
  CHECK(v[2] == Complex(2, 4));
  CHECK(v[3] == Complex(-1, 4));
}

TEST_CASE("boundary circuit corner schedule") {
  const LoopPath phi = boundary_circuit(Rectangle(-1, 1, -1, 1));
  CHECK(phi(0.0) == Complex(-1, -1));
  CHECK(phi(0.25) == Complex(1, -1));
  CHECK(phi(0.5) == Complex(1, 1));
  CHECK(phi(0.75) == Complex(-1, 1));
  CHECK(phi(1.0) == phi(0.0));
  CHECK(same(phi(0.125), Complex(0, -1)));
  CHECK(same(phi(0.375), Complex(1, 0)));
  CHECK(same(phi(0.625), Complex(0, 1)));
  CHECK(same(phi(0.875), Complex(-1, 0)));
}

TEST_CASE("boundary circuit stays on the boundary and is injective on [0,1)") {
  const Rectangle r(0.25, 1.75, -0.5, 2.0);
  const LoopPath phi = boundary_circuit(r);
  constexpr int n = 4000;
  std::vector<Complex> pts;
  for (int j = 0; j < n; ++j) {
    const Complex z = phi(static_cast<double>(j) / n);
    CHECK(r.boundary_distance(z) <= 1e-15);
    pts.push_back(z);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(pts[j] - pts[k]) < 1e-9) FAIL("circuit repeats a point at samples " << j << ", " << k);
}

TEST_CASE("quarters are the midpoint cuts in SW, SE, NW, NE order") {
  const auto q = quarters(Rectangle(0, 2, 0, 2));
  CHECK(q[0] == Rectangle(0, 1, 0, 1));
  CHECK(q[1] == Rectangle(1, 2, 0, 1));
  CHECK(q[2] == Rectangle(0, 1, 1, 2));
  CHECK(q[3] == Rectangle(1, 2, 1, 2));
}

TEST_CASE("quarters partition the rectangle and halve the perimeter") {
  Gen gen(101);
  for (int n = 0; n < 200; ++n) {
    const Rectangle s = gen.rect_inside({-5, 5, -5, 5}, 1e-3);
    const auto q = quarters(s);
    CHECK(pairwise_disjoint_interiors(q));
    CHECK(covers(q, s));
    double total = 0.0;
    for (const auto& c : q) {
      CHECK_THAT(c.area(), WithinRel(s.area() / 4, 1e-12));
      CHECK_THAT(c.perimeter(), WithinRel(s.perimeter() / 2, 1e-12));
      total += c.area();
    }
    CHECK_THAT(total, WithinRel(s.area(), 1e-12));
  }
}

TEST_CASE("nested quartering halves the diameter each time") {
  Rectangle s(-1, 3, 0, 3);
  const double d0 = s.diameter();
  for (int n = 1; n <= 20; ++n) {
    s = quarters(s)[static_cast<std::size_t>(n % 4)];
    CHECK_THAT(s.diameter(), WithinRel(d0 / std::ldexp(1.0, n), 1e-12));
  }
}

TEST_CASE("grid partition cells tile the parent exactly") {
  Gen gen(202);
  for (int n = 0; n < 200; ++n) {
    const Rectangle parent = gen.rect_inside({-10, 10, -10, 10}, 0.1);
    const GridPartition grid(parent, gen.cuts(parent.re_lo(), parent.re_hi(), 8),
                             gen.cuts(parent.im_lo(), parent.im_hi(), 8));
    const auto cells = grid.cells();
    REQUIRE(cells.size() == grid.cell_count());
    CHECK(pairwise_disjoint_interiors(cells));
    CHECK(covers(cells, parent));
    double total = 0.0;
    for (const auto& c : cells) total += c.area();
    CHECK(std::abs(total - parent.area()) <= 1e-15 * parent.area() * static_cast<double>(cells.size()) * 4);
  }
}

TEST_CASE("grid partitions validate their cuts") {
  const Rectangle r(0, 1, 0, 1);
  CHECK_THROWS_AS(GridPartition(r, {0.0, 0.5}, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(GridPartition(r, {0.0, 0.6, 0.5, 1.0}, {0.0, 1.0}), Error);
  CHECK_NOTHROW(GridPartition(r, {0.0, 1.0}, {0.0, 0.3, 1.0}));
}

TEST_CASE("area inequalities on random families") {
  Gen gen(303);
  const Rectangle parent(-2, 2, -1, 3);
  for (int n = 0; n < 200; ++n) {
    const auto cells = GridPartition(parent, gen.cuts(-2, 2, 6), gen.cuts(-1, 3, 6)).cells();
    std::vector<Rectangle> packing, covering;
    for (const auto& c : cells) {
      if (gen.integer(0, 2) > 0) packing.push_back(c.scaled(gen.uniform(0.2, 1.0)));
      covering.push_back(c.scaled(gen.uniform(1.0, 1.7)));
    }
    double packed = 0.0, covered = 0.0;
    for (const auto& c : packing) packed += c.area();
    for (const auto& c : covering) covered += c.area();
    REQUIRE(pairwise_disjoint_interiors(packing));
    REQUIRE(covers(covering, parent));
    CHECK(packed <= parent.area() * (1 + 1e-12));
    CHECK(covered >= parent.area() * (1 - 1e-12));
  }
}

TEST_CASE("covers detects a gap") {
  const Rectangle r(0, 1, 0, 1);
  const std::vector<Rectangle> gappy{{0, 0.5, 0, 1}, {0.5, 1, 0, 0.9}};
  CHECK_FALSE(covers(gappy, r));
  const std::vector<Rectangle> full{{0, 0.5, 0, 1}, {0.4, 1, 0, 1}};
  CHECK(covers(full, r));
}

TEST_CASE("segments and partitions") {
  CHECK_THROWS_AS(Segment(1.0, 1.0), Error);
  const Segment s({0, 0}, {2, 2});
  CHECK(s.point(1.0) == Complex(2, 2));
  CHECK(s.point(0.5) == Complex(1, 1));
  CHECK_THAT(s.distance_to({2, 0}), WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_THAT(s.distance_to({3, 3}), WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK(s.reversed().a() == s.b());

  const auto p = Partition::equipartition(8);
  CHECK(p.points().size() == 9);
  CHECK(p.mesh() == 0.125);
  CHECK_THROWS_AS(Partition({0.0, 0.5}), Error);
  CHECK_THROWS_AS(Partition({0.0, 0.5, 0.5, 1.0}), Error);
  CHECK_THROWS_AS(Partition({0.1, 1.0}), Error);
  CHECK(Partition({0.0, 0.1, 0.7, 1.0}).mesh() == Catch::Approx(0.6));
}

TEST_CASE("boundary distance") {
  const Rectangle r(0, 4, 0, 2);
  CHECK(r.boundary_distance({1, 1}) == 1.0);
  CHECK(r.boundary_distance({3.5, 1}) == 0.5);
  CHECK(r.boundary_distance({4, 1}) == 0.0);
  CHECK(r.boundary_distance({7, 6}) == 5.0);
}

TEST_CASE("loops must close") {
  CHECK_THROWS_AS(LoopPath([](double t) { return Complex(t, 0); }), Error);
  CHECK_NOTHROW(LoopPath([](double t) { return Complex(t * (1 - t), 0); }));
}
