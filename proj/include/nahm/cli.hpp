#pragma once

#include <iosfwd>

namespace nahm {

// Exit codes: 0 success, 1 computation failure (or a failed verify check),
// 2 malformed input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nahm
