#pragma once

#include <iosfwd>

namespace lstreg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kSchemaVersion = 1;

// Entry point of the lstreg command-line tool. Reports go to files under
// --output-dir; `out` receives a short summary and `err` a JSON error object
// on failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lstreg
