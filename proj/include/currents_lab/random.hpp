#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "currents_lab/current.hpp"
#include "currents_lab/word.hpp"

namespace currents_lab {

using Rng = std::mt19937_64;

// Freely reduced word of exactly n letters, each step uniform among the
// 2k - 1 letters that do not cancel.
Word random_word(Basis basis, std::size_t n, Rng& rng);
// Cyclically reduced word with length uniform in [1, max_len].
Word random_cyclic_word(Basis basis, std::size_t max_len, Rng& rng);
// Sum of 1..max_terms counting currents of cyclic words of length
// <= max_len with weights p/q, 1 <= p <= 7, 1 <= q <= 4.
RationalCurrent random_current(Basis basis, std::size_t max_terms, std::size_t max_len, Rng& rng);

}  // namespace currents_lab
