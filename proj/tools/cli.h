#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zsl::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kNotOptimal = 3;  // `check` on a point that fails the gap test

// Runs `zsl <subcommand> ...`; args excludes the program name. Errors are
// reported on err as one JSON line {"error": <code>, "message": <text>}.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace zsl::cli
