#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace orbitrank {

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace orbitrank
