#pragma once

namespace seqmem {

/// Entry point of the seqmem command-line tool. Returns 0 on success, 1 on an
/// experiment-level failure and 2 on a usage or configuration error.
int run_cli(int argc, char** argv);

}  // namespace seqmem
