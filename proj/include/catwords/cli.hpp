#pragma once

#include <iosfwd>

namespace catwords {

// Exit codes: 0 success or verification passed, 1 verification failed,
// 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace catwords
