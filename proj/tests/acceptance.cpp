// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <cstdio>

#include <rwce/verify.hpp>

int main() {
  const auto suite = rwce::run_acceptance_suite(2026);
  bool all = true;
  for (const auto& crit : suite) {
    const bool ok = crit.pass();
    all = all && ok;
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", crit.index,
                crit.title.c_str());
    if (!ok)
      for (const auto& c : crit.checks)
        if (!c.pass)
          std::printf("       %s: measured %.17g vs bound %.17g (%s)\n",
                      c.id.c_str(), c.measured, c.bound,
                      c.description.c_str());
  }
  return all ? 0 : 1;
}
