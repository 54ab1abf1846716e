#pragma once

namespace emqm::cli {

/// Full command-line entry point (levels | transition | verify | constants).
/// Exit codes: 0 success, 1 check/validation failure, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace emqm::cli
