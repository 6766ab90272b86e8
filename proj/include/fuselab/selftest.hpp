#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fuselab/group.hpp"

namespace fuselab {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double millis = 0.0;
};

struct SelftestOptions {
  std::string only;  // run a single suite when nonempty
  int prime = 0;     // restrict catalog pairs to this prime when nonzero
};

// Runs the property suites over the builtin catalog. Suites:
//   saturation, local-flags, alperin, hyperfocal, quotient, hyperfocal-bound,
//   finfty-invariance, solv, opprime-minimal, linking,
//   group-invariants, subsystem-invariants
std::vector<SuiteResult> run_selftest(const SelftestOptions& opt = {});

std::vector<std::string> selftest_suite_names();

}  // namespace fuselab
