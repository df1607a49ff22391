#include <cstdio>

#include "fracradon/acceptance.hpp"

int main() {
  int failed = 0;
  fracradon::run_acceptance([&](const fracradon::CriterionResult& r) {
    std::printf("%s\n", fracradon::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d of %d criteria passed\n", fracradon::kCriterionCount - failed,
              fracradon::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
