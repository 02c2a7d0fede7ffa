#pragma once

#include "mmwave/numerics.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mmw {

// Exit codes of the command-line front end.
enum ExitCode { ExitOk = 0, ExitIo = 1, ExitInvalidMaterial = 2, ExitSolver = 3 };

// args excludes the program name. Results go to `out` unless --out names a file.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Accepts "a", "bi", "a+bi", "a-bi" with optional exponents; "i" alone means 1i.
std::optional<cd> parse_complex(const std::string &s);

} // namespace mmw
