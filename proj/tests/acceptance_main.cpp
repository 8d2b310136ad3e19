// One line per acceptance criterion; exit status follows acceptance_ok.
#include <cstdio>
#include <cstring>
#include <iostream>

#include "roughren/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace roughren;
  bool strict = false;
  AcceptanceOptions opts;
  opts.config = default_config();
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--strict")) strict = true;
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) opts.only.insert(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--strict] [--only K]...\n";
      return 2;
    }
  }
  const auto results = run_acceptance(opts);
  for (const auto& r : results) {
    std::printf("%s  [%.1f s]\n", summary_line(r).c_str(), r.seconds);
    for (const auto& c : r.reports)
      if (!c.passed) std::printf("    %s: %s\n", c.name.c_str(), c.counterexample.c_str());
    for (const auto& a : r.analysis) std::printf("    analysis: %s\n", a.c_str());
    if (r.id == 9)
      for (const auto& c : r.reports)
        for (const auto& n : c.notes) std::printf("    %s -> %s\n", c.name.c_str(), n.c_str());
  }
  const bool ok = acceptance_ok(results, strict);
  std::printf("%s\n", ok ? "acceptance: OK" : "acceptance: FAILED");
  return ok ? 0 : 1;
}
