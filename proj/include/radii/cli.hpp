#pragma once

#include <iosfwd>

namespace radii {

// Exit codes: 0 pass, 1 check violation, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace radii
