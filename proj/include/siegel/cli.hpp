#pragma once

#include <iosfwd>

namespace siegel {

// exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 budget exceeded
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace siegel
