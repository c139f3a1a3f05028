#pragma once

namespace gradsos {

// Full command-line entry point (certify / verify / bench subcommands);
// lives in the library so tests can drive it in-process.
int cli_main(int argc, const char* const* argv);

}  // namespace gradsos
