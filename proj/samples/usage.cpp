#include <cstdio>

#include "cauchy/cauchy.hpp"

int main() {
  using namespace cauchy;
  const FunctionSpec f = parse("exp(z)/(z - 0.5)");
  const Rectangle r(-1, 1, -1, 1);

  const IntegralResult I = rectangle_integral(f, r);
  std::printf("boundary integral of %s: %.12g%+.12gi (k=%zu)\n", f.to_string().c_str(), I.value.real(),
              I.value.imag(), I.partitions_used);

  const FunctionSpec g = parse("sin(z)");
  std::printf("sin(0.3) via boundary values: %.12g\n", cauchy_value(g, 0.3, r).real());

  const WindingResult w = winding_number(boundary_circuit(r), 0.25);
  std::printf("winding of the boundary about 0.25: %ld\n", w.value);

  const FunctionSpec p = parse("z^3 - z");
  const PreimageReport roots = locate_preimages(p, Rectangle(-2, 2, -2, 2), 0.0, 1e-6);
  std::printf("zeros of %s in [-2,2]^2: %ld\n", p.to_string().c_str(), roots.total_winding);
  for (const auto& b : roots.boxes)
    std::printf("  near %.6f%+.6fi (winding %ld)\n", b.rect.center().real(), b.rect.center().imag(), b.winding);
  return roots.total_winding == 3 ? 0 : 1;
}
