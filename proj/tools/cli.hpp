#pragma once

#include <ostream>

namespace pargrade::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitMismatch = 3;

/// Runs one command line. All output goes to `out` and `err`; the process
/// environment is never consulted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pargrade::cli
