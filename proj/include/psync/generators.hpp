#pragma once

#include <cstddef>
#include <cstdint>

#include "psync/automaton.hpp"
#include "psync/codes.hpp"

namespace psync {

/// Černý automaton C_n over {a, b}: a rotates, b sends 0 to 1 and fixes the rest.
PartialDfa gen_cerny(std::size_t n);

/// The one-word code {a^k b a^(k+1) b}, k >= 1.
PrefixCode gen_oneword_code(std::size_t k);

/// Letters a, b, c, ... for an alphabet of the given size (at most 26).
std::vector<std::string> letter_alphabet(std::size_t size);

inline constexpr std::size_t kGenerateRetries = 1000;

/// Each entry is defined with probability `density`, target uniform;
/// redrawn until strongly connected. Throws PreconditionError on bad
/// parameters and LimitError when retries run out.
PartialDfa gen_random_partial(std::size_t n, std::size_t alpha, double density, std::uint64_t seed);

/// `count` codewords of length 1..maxlen, each redrawn until it is
/// prefix-free with the earlier ones; the whole draw restarts after a long
/// run of clashes. Throws PreconditionError on impossible parameters and
/// LimitError when restarts run out.
PrefixCode gen_random_prefix_code(std::size_t count, std::size_t maxlen, std::size_t alpha, std::uint64_t seed);

}  // namespace psync
