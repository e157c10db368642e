#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fuchsian/scheme.hpp"

namespace fuchsian {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Named suites, one per acceptance criterion, in criterion order.
std::vector<std::string> suite_names();
CheckResult run_suite(std::string_view name, std::uint64_t seed = 1);

// Invariant battery for one scheme; geometric checks run when an oracle exists.
std::vector<CheckResult> verify_scheme(const Scheme& s, std::uint64_t seed = 1);

std::string result_line(const CheckResult& r);

}  // namespace fuchsian
