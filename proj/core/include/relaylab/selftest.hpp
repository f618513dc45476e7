#pragma once

#include <ostream>

namespace relaylab::experiments {

// Fast invariant suite behind the CLI `selftest` subcommand: algebraic MGF
// identities, expansion consistency, monotonicity, estimator determinism.
// Prints one line per check; returns false if anything failed.
bool run_selftest(std::ostream& out);

}  // namespace relaylab::experiments
