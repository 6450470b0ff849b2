// One line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>

#include "arbor/verify.hpp"

int main() {
  arbor::VerifyOptions opt;  // 300 instances, 500 trials per cell, fixed seed
  int failed = 0;
  double total = 0.0;
  for (int id = 1; id <= 11; ++id) {
    const auto r = arbor::verify_all(opt, {id}).front();
    std::printf("%s  %2d  %s: %s  [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.summary.c_str(),
                r.seconds);
    std::fflush(stdout);
    failed += !r.pass;
    total += r.seconds;
  }
  std::printf("%d/11 criteria passed in %.1fs\n", 11 - failed, total);
  return failed == 0 ? 0 : 1;
}
