#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace delegation::cli {

// Dispatches argv (without the program name) to a subcommand. Output is
// byte-for-byte deterministic for a fixed configuration. Returns 0 on
// success, 1 on validation errors, 2 on verification-suite failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// lo:hi:step inclusive range, or a single value.
std::vector<double> parse_range(const std::string& spec);

} // namespace delegation::cli
