#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kisin::cli {

// Exit codes: 0 success, 1 mathematical failure, 2 parse or precision error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kisin::cli
