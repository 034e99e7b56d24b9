#pragma once

namespace echoloc::cli {

// Entry point for the `echoloc` binary.  Exit codes: 0 success, 1 domain
// error (name printed on stderr), 2 usage error.
int run(int argc, const char* const* argv);

} // namespace echoloc::cli
