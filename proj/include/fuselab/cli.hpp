#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fuselab/catalog.hpp"

namespace fuselab {

// Executes one CLI invocation. Exit codes: 0 ok, 1 hypothesis violation,
// 2 theorem violation, 3 input error.
int run_command(const std::vector<std::string>& argv, std::ostream& out,
                Report* report_out = nullptr);

}  // namespace fuselab
