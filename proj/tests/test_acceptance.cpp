#include <cstdio>

#include "cauchy/verify.hpp"

int main() {
  constexpr std::uint64_t seed = 42;
  auto report = cauchy::verify::run_suite(seed);
  report.criteria.push_back(cauchy::verify::determinism(seed));
  std::fputs(report.text().c_str(), stdout);
  return report.passed() ? 0 : 1;
}
