#pragma once

// Command-line front end: spectrum, sweep, verify and plot.
//
// Exit status: 0 on success, 1 on bad arguments or missing inputs, 2 when a
// solver does not converge or a certificate fails.

#include <iosfwd>
#include <string>
#include <vector>

namespace steklov {

/// Default output directory when --out is not given.
inline constexpr const char* out_dir_env = "STEKLOV_OUT_DIR";

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steklov
