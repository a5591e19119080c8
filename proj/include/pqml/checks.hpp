#pragma once

// The acceptance criteria as runnable checks. Each returns a pass flag and
// a one-line detail; the first failure found is described.

#include <cstdint>
#include <string>
#include <vector>

namespace pqml::checks {

struct Options {
  std::uint64_t seed = 0x5EED2024;
  /// Divides randomized sample counts by 10 and shrinks exhaustive sets.
  bool quick = false;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

Result diversity_spot_values(const Options& o);
Result quotient_mdia_oracle(const Options& o);
Result breakdown_oracle(const Options& o);
Result f_stability(const Options& o);
Result extend_witness_postcondition(const Options& o);
Result truncation_lemma(const Options& o);
Result axiom_validities(const Options& o);
Result bc_on_quantifiable(const Options& o);
Result diversity_collapse(const Options& o);
Result sahlqvist_classifier(const Options& o);
Result invariance_failure_demo(const Options& o);
Result shift_isomorphism(const Options& o);

/// All twelve, in order.
std::vector<Result> run_all(const Options& o);

}  // namespace pqml::checks
