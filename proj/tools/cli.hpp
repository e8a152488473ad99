#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repising::cli {

inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kRefused = 3,
  kSearchExhausted = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

/// git-style blob SHA-1 of `content` ("blob <size>\0" prefix), lowercase hex.
std::string git_blob_sha1(const std::string &content);

} // namespace repising::cli
