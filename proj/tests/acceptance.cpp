// One PASS/FAIL line per acceptance criterion.
//
// Exit status is 0 when every criterion passes. With --expect-fail, it is 0
// exactly when the failing set equals the listed ids, so a known failure
// stays visible without masking new ones.

#include <cstdio>
#include <iostream>
#include <set>
#include <vector>

#include "CLI11.hpp"
#include "pqml/checks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  pqml::checks::Options opts;
  std::vector<int> expect_fail;
  app.add_flag("--quick", opts.quick, "smaller samples");
  app.add_option("--seed", opts.seed, "random seed");
  app.add_option("--expect-fail", expect_fail, "criterion ids known to fail");
  CLI11_PARSE(app, argc, argv);

  std::set<int> failed;
  double total = 0;
  for (const auto& r : pqml::checks::run_all(opts)) {
    std::printf("%s [%d] %s: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                r.seconds);
    if (!r.passed) failed.insert(r.id);
    total += r.seconds;
  }
  std::printf("%zu of 12 criteria passed in %.1f s\n", 12 - failed.size(), total);

  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (failed == expected) {
    if (!expected.empty()) std::printf("failing set matches the expected known failures\n");
    return 0;
  }
  for (int id : failed)
    if (!expected.count(id)) std::printf("unexpected failure: [%d]\n", id);
  for (int id : expected)
    if (!failed.count(id)) std::printf("expected failure did not occur: [%d]\n", id);
  return 1;
}
