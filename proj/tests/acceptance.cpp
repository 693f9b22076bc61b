#include "hkrank/repro.hpp"

#include <cstdio>
#include <cstring>

// One line per acceptance criterion. Exit 0 when only expected failures fail.
int main(int argc, char** argv) {
  hkrank::ReproOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--long") == 0) opts.long_mode = true;
  }
  const auto results = hkrank::run_all(opts);
  for (const auto& r : results) {
    std::printf("criterion %2d %-16s %-46s %8.2fs  %s\n", r.id, hkrank::verdict(r).c_str(), r.name.c_str(), r.seconds,
                r.detail.c_str());
  }
  const bool ok = hkrank::all_as_expected(results);
  std::printf("%s\n", ok ? "acceptance: all criteria as expected" : "acceptance: unexpected failure");
  return ok ? 0 : 1;
}
