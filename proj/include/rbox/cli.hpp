#pragma once

#include <ostream>

namespace rbox {

inline constexpr const char* kToolName = "rbox";
inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes: 0 success or verdict holds, 1 verdict fails, 2 usage or parse
/// error, 3 budget refusal. The JSON report goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rbox
