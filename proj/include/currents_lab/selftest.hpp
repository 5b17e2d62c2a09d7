#pragma once

#include <cstdint>

#include "currents_lab/dynamics.hpp"

namespace currents_lab {

// Randomized invariant suites for words, automorphisms, currents, twist
// identities and tree lengths over ranks 2, 3 and 5, `trials` cases per suite
// and rank. One assertion per (suite, rank); a failure carries the first
// counterexample as its witness. Deterministic in (seed, trials).
ConvergenceReport run_selftest(std::uint64_t seed, int trials = 100);

}  // namespace currents_lab
