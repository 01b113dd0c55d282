#pragma once

namespace pitchrl {

/// Entry point behind the pitchrl binary. Returns 0 on success, 1 on I/O or
/// processing failures (diagnostic on stderr), 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace pitchrl
