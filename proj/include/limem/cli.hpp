#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limem {

/// Exit codes: 0 decided, 1 cross-check disagreement, 2 usage error, 3 budget exhausted.
int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace limem
