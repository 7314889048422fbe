#pragma once

#include <iosfwd>

namespace modform {

/// Entry point of the `modform` tool. Errors are reported on `err` as a
/// single line "modform: error[<code>]: <message>" with exit code 2.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modform
