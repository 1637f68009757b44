#pragma once

#include <ostream>

namespace nshape {

// Exit codes: 0 ok, 1 usage or invalid input, 2 parse error, 3 assumption violated, 4 internal failure.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nshape
