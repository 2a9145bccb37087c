#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcover {

// Entry point of the pcover tool. `args` excludes the program name.
// Returns 0 on success, 1 on invalid input or an infeasible cover, 2 on an
// internal failure.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace pcover
