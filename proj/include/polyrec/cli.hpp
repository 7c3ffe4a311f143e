#pragma once

// Command-line front end. Every subcommand writes one artifact (CSV, JSON or
// SVG) to --out or standard output and returns a process exit code:
//   0 success, 1 invalid configuration or malformed input,
//   2 contract/overflow/precision/not-found error, 3 resource limit.

#include <iosfwd>
#include <string>
#include <vector>

namespace polyrec::cli {

constexpr int kSchemaVersion = 1;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace polyrec::cli
