#ifndef CAUSAL_CHANNELS_CLI_H
#define CAUSAL_CHANNELS_CLI_H

#include <iosfwd>

namespace causal_channels {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Runs one subcommand; the report goes to `out` (or --out), diagnostics to `err`.
int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace causal_channels

#endif
