#include <catch_amalgamated.hpp>

#include <numbers>
#include <string>
#include <vector>

#include "cauchy/funcspec.hpp"
#include "support.hpp"

using namespace cauchy;
using testing_support::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

// Central difference with the fixed step 1e-5.
Complex central_difference(const FunctionSpec& f, Complex z) {
  constexpr double h = 1e-5;
  return (f(z + h) - f(z - h)) / (2 * h);
}

bool avoids(const FunctionSpec& f, Complex z, double margin) {
  for (Complex s : f.singularities())
    if (std::abs(z - s) < margin) return false;
  return true;
}

const std::vector<std::string> kCorpus = {
    "z^2 + 1",        "exp(z)",           "sin(z)*z",          "cos(z)^3 - 2*z",
    "1/(z-2)",        "(z^2 - 1)/(z+3)",  "exp(sin(z))",       "z^5 - 3*z^4 + 2*z - 7",
    "sin(2*z)/(4-z)", "exp(-z^2)*cos(z)", "(1+2*i)*z - i/2",   "1/(z - 3*i)^2",
    "-z^3 + -2*z",    "2^3*z^2",          "cos(z)/(z+2.5e0)",  "exp(z)*sin(z)*cos(z)"};

}  // namespace

TEST_CASE("parse and eval: reference values") {
  CHECK(std::abs(parse("z^2 + 1")(Complex(0, 1))) <= 1e-15);
  CHECK(parse("exp(z)")(0.0) == Complex(1.0, 0.0));
  CHECK(parse("z*z")(Complex(1, 1)) == Complex(0, 2));
  CHECK(std::abs(parse("exp(z)")(Complex(0, kPi)) - Complex(-1, 0)) <= 1e-12);
  CHECK(std::abs(parse("pi")(0.0) - kPi) == 0.0);
}

TEST_CASE("euler identity through the coordinate formulas") {
  Gen gen(11);
  const FunctionSpec e = parse("exp(z)"), s = parse("sin(z)"), c = parse("cos(z)");
  for (int n = 0; n < 100; ++n) {
    const double x = gen.uniform(-2, 2), y = gen.uniform(-2, 2);
    const Complex z(x, y);
    CHECK(std::abs(e(z) - std::exp(x) * Complex(std::cos(y), std::sin(y))) <= 1e-13 * std::exp(x));
    CHECK(std::abs(c(z) * c(z) + s(z) * s(z) - 1.0) <= 1e-12 * (1 + std::norm(c(z))));
  }
}

TEST_CASE("precedence and associativity") {
  const Complex z(1.5, -0.25);
  auto at = [&](const char* src) { return parse(src)(z); };
  CHECK(at("2+3*4") == Complex(14, 0));
  CHECK(at("2*3^2") == Complex(18, 0));
  CHECK(at("-2^2") == Complex(-4, 0));
  CHECK(at("2^3^2") == Complex(512, 0));
  CHECK(at("8/4/2") == Complex(1, 0));
  CHECK(at("8-4-2") == Complex(2, 0));
  CHECK(at("(2+3)*4") == Complex(20, 0));
  CHECK(at("--z") == z);
  CHECK(std::abs(at("z - z*2 + 3/z") - (z - z * 2.0 + 3.0 / z)) <= 1e-15);
  CHECK(at("1.5e1 + .5") == Complex(15.5, 0));
  CHECK(at("2*i") == Complex(0, 2));
  CHECK_THROWS_AS(parse("2i"), SyntaxError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse("z + * 2");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("sin(z"), SyntaxError);
  CHECK_THROWS_AS(parse("foo(z)"), SyntaxError);
  CHECK_THROWS_AS(parse("z )"), SyntaxError);
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("w"), SyntaxError);
}

TEST_CASE("exponents must be nonnegative integer literals") {
  for (const char* bad : {"z^-1", "z^1.5", "z^z", "z^(2)", "z^1e2", "z^99999"}) {
    INFO(bad);
    try {
      parse(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadExponent);
    }
  }
  CHECK(parse("z^0")(5.0) == Complex(1, 0));
}

TEST_CASE("pole detection is syntactic") {
  auto poles = [](const char* src) {
    const FunctionSpec f = parse(src);
    return std::vector<Complex>(f.singularities().begin(), f.singularities().end());
  };
  CHECK(poles("1/(z-2)") == std::vector<Complex>{2.0});
  CHECK(poles("1/z") == std::vector<Complex>{0.0});
  CHECK(poles("3/(z+1)^2") == std::vector<Complex>{-1.0});
  CHECK(poles("1/(2-z) + 1/(z-2)") == std::vector<Complex>{2.0});
  CHECK(poles("1/(z-i)") == std::vector<Complex>{Complex(0, 1)});
  CHECK(poles("exp(z)/(z - (1+i))") == std::vector<Complex>{Complex(1, 1)});
  CHECK(poles("1/(z^2+1)").empty());
  CHECK(poles("z^2 + 1").empty());
}

TEST_CASE("evaluation errors") {
  try {
    parse("1/(z)")(0.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvalAtSingularity);
  }
  try {
    parse("exp(z)")(800.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Range);
  }
  const FunctionSpec g = parse("1/(z^2+1)").with_singularities(std::vector<Complex>{{0, 1}, {0, -1}});
  CHECK(g.singularities().size() == 2);
  CHECK_THROWS_AS(g(Complex(0, 1)), Error);
}

TEST_CASE("derivative reference values") {
  const FunctionSpec cube = differentiate(parse("z^3"));
  CHECK(cube(2.0) == Complex(12, 0));
  const Complex z(0.3, -0.7);
  CHECK(differentiate(parse("exp(z)"))(z) == parse("exp(z)")(z));
  CHECK(std::abs(differentiate(parse("z*sin(z)"))(0.0)) == 0.0);
  const FunctionSpec zs = parse("z*sin(z)");
  CHECK(std::abs(differentiate(zs)(0.0) - central_difference(zs, 0.0)) <= 1e-8);
  CHECK(differentiate(parse("1/(z-2)")).singularities().size() == 1);
}

TEST_CASE("derivative agrees with central differences") {
  Gen gen(22);
  for (const auto& src : kCorpus) {
    INFO(src);
    const FunctionSpec f = parse(src);
    const FunctionSpec df = differentiate(f);
    for (int n = 0; n < 50; ++n) {
      Complex z;
      do z = gen.in_disc(2.0); while (!avoids(f, z, 0.2));
      const Complex exact = df(z);
      CHECK(std::abs(exact - central_difference(f, z)) <= 1e-6 * (1 + std::abs(exact)));
    }
  }
}

TEST_CASE("print and re-parse preserves evaluation") {
  Gen gen(33);
  for (const auto& src : kCorpus) {
    const FunctionSpec f = parse(src);
    const std::string printed = f.to_string();
    INFO(src << " printed as " << printed);
    const FunctionSpec g = parse(printed);
    for (int n = 0; n < 100; ++n) {
      Complex z;
      do z = gen.in_disc(2.0); while (!avoids(f, z, 0.2));
      CHECK(std::abs(f(z) - g(z)) < 1e-12 * (1 + std::abs(f(z))));
    }
    const FunctionSpec df = differentiate(f);
    CHECK(parse(df.to_string()).to_string() == df.to_string());
  }
}

TEST_CASE("eval is linear over parsed composites") {
  Gen gen(44);
  for (std::size_t i = 0; i + 1 < kCorpus.size(); ++i) {
    const std::string fs = kCorpus[i], gs = kCorpus[i + 1];
    const Complex alpha = gen.in_disc(3.0), beta = gen.in_disc(3.0);
    auto lit = [](Complex c) {
      return "(" + std::to_string(c.real()) + " + " + std::to_string(c.imag()) + "*i)";
    };
    const Complex a(std::stod(std::to_string(alpha.real())), std::stod(std::to_string(alpha.imag())));
    const Complex b(std::stod(std::to_string(beta.real())), std::stod(std::to_string(beta.imag())));
    const FunctionSpec f = parse(fs), g = parse(gs);
    const FunctionSpec h = parse(lit(alpha) + "*(" + fs + ") + " + lit(beta) + "*(" + gs + ")");
    for (int n = 0; n < 20; ++n) {
      Complex z;
      do z = gen.in_disc(2.0); while (!avoids(h, z, 0.2));
      const Complex want = a * f(z) + b * g(z);
      CHECK(std::abs(h(z) - want) <= 1e-12 * (1 + std::abs(want)));
    }
  }
}

TEST_CASE("builders simplify only local identities") {
  const Expr z = Expr::variable();
  CHECK((z + Expr::constant(0.0)).kind() == NodeKind::Variable);
  CHECK((z * Expr::constant(1.0)).kind() == NodeKind::Variable);
  CHECK((z * Expr::constant(0.0)).is_constant(0.0));
  CHECK(pow(z, 1).kind() == NodeKind::Variable);
  CHECK(pow(z, 0).is_constant(1.0));
  CHECK((Expr::constant(2.0) * Expr::constant(3.0)).is_constant(6.0));
  CHECK(derivative(Expr::constant(4.0)).is_constant(0.0));
}

TEST_CASE("a custom variable name") {
  const FunctionSpec f = parse("cos(2*pi*t)", "t");
  CHECK(std::abs(f(0.5) - Complex(-1, 0)) <= 1e-15);
  CHECK_THROWS_AS(parse("z", "t"), SyntaxError);
  CHECK_THROWS_AS(parse("t", "i"), Error);
}
