#pragma once

#include <ostream>

namespace allee::cli {

// Exit codes: 0 success, 2 bad input, 3 degenerate analysis, 1 internal failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace allee::cli
