#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ejcm::cli {

enum ExitCode { ok = 0, config_error = 2, numeric_error = 3 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main_entry(int argc, char** argv);

}  // namespace ejcm::cli
