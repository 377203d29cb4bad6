#ifndef TOEPLITZ_CHAINS_CLI_HPP
#define TOEPLITZ_CHAINS_CLI_HPP

namespace toeplitz_chains {

/// Batch front-end. Exit codes: 0 success, 2 usage or validation error,
/// 3 numeric-instability warnings under --strict.
int run_cli(int argc, const char* const* argv);

}  // namespace toeplitz_chains

#endif
