#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robin_fsi {

/// Full command-line entry point; returns the process exit status (0 ok, 1 numerical, 2 usage).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robin_fsi
