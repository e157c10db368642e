// One line per acceptance criterion; exit status 1 if any fails.
#include <fmt/format.h>

#include "fuchsian/verify.hpp"

int main() {
  int failed = 0, k = 0;
  for (const auto& name : fuchsian::suite_names()) {
    const auto r = fuchsian::run_suite(name);
    fmt::print("[{:2}] {}\n", ++k, fuchsian::result_line(r));
    std::fflush(stdout);
    failed += !r.pass;
  }
  fmt::print("{} of {} criteria pass\n", k - failed, k);
  return failed ? 1 : 0;
}
