// Acceptance criteria 1-11. One line per criterion; exit status 1 if any fails.
// Case counts and wall-clock limits are fixed here and are not configurable.

#include "ppcalc/suites.hpp"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace {

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
};

// time limits in seconds, per criterion
const std::vector<Criterion> kCriteria{
    {1, "Z/4 lattice reproduction", 5},
    {2, "dichotomy suite", 60},
    {3, "duality suite", 120},
    {4, "matrix criterion vs free realization", 120},
    {5, "domain characterization", 10},
    {6, "kernel criterion cross-check", 60},
    {7, "Ulm forest suite", 10},
    {8, "pure-injective Ulm bound", 300},
    {9, "absolutely pure ring degeneration", 60},
    {10, "flat and absolutely pure defects", 60},
    {11, "r-inverse chain suite", 60},
};

constexpr std::uint64_t kSeed = 20240601;

}  // namespace

int main() {
  using namespace ppcalc::suites;
  const Sizes sizes{500, 500, 200, 100, 200};
  const auto checks = acceptance_checks(kSeed, sizes);
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Criterion& c = kCriteria[i];
    const SuiteResult r = checks[i]();
    const bool in_time = r.seconds < c.limit_seconds;
    const bool ok = r.passed() && in_time;
    failed += !ok;
    std::string why;
    if (!r.error.empty()) why = "error: " + r.error;
    else if (r.failures) why = std::to_string(r.failures) + " failures";
    else if (!in_time) why = "over time limit";
    std::printf("[%s] criterion %2d %-40s cases=%-6zu failures=%zu time=%.2fs limit=%.0fs%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.title, r.cases, r.failures, r.seconds, c.limit_seconds, why.empty() ? "" : "  ", why.c_str());
    for (std::size_t k = 0; k < r.counterexamples.size() && k < 5; ++k)
      std::printf("       counterexample: %s\n", r.counterexamples[k].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed ? 1 : 0;
}
