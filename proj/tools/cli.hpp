#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace hypoexp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegativeVerdict = 2;

/// Runs one command. args excludes the program name. Output goes to out,
/// diagnostics to err; data paths given as "-" read from in.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace hypoexp::cli
