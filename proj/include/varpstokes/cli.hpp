#ifndef VARPSTOKES_CLI_HPP
#define VARPSTOKES_CLI_HPP

namespace varpstokes {

// Exit codes: 0 success, 2 configuration error, 3 solver failure,
// 4 reference-table tolerance failure, 1 failed verify suite.
int run_cli(int argc, const char* const* argv);

} // namespace varpstokes

#endif
