#pragma once

#include <iosfwd>

namespace bsz {

inline constexpr const char* kVersion = "0.1.0";

// Parses argv, runs one subcommand and writes its JSON to `out`.
// Returns 0 on success, 1 for a negative answer, 2 for invalid input and
// 3 for a numerical failure. `in` backs file arguments given as "-".
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bsz
