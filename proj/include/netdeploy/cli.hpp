#pragma once

namespace netdeploy {

/// Entry point of the netdeploy tool. Returns 0 on success, 1 on invalid
/// input, 2 on runtime failure.
int cli_main(int argc, char** argv);

} // namespace netdeploy
