// Acceptance gate: runs the full verification suite and prints one pass/fail
// line per criterion. The suite is executed twice to confirm the report is
// byte-identical across invocations.

#include <chrono>
#include <iostream>

#include "ogmlab/verify.hpp"

int main() {
  const auto start = std::chrono::steady_clock::now();
  const ogm::VerifyReport first = ogm::run_verification();
  const ogm::VerifyReport second = ogm::run_verification();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << ogm::render_report(first);

  bool ok = first.all_pass();
  if (ogm::render_report(first) != ogm::render_report(second)) {
    std::cout << "re-run report differs: FAIL\n";
    ok = false;
  } else {
    std::cout << "re-run report byte-identical: pass\n";
  }
  if (elapsed >= 600.0) {
    std::cout << "runtime budget exceeded: FAIL\n";
    ok = false;
  }
  std::cout << (ok ? "acceptance: PASS" : "acceptance: FAIL") << std::endl;
  return ok ? 0 : 1;
}
