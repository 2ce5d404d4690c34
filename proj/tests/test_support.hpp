#pragma once

#include <cstdint>
#include <vector>

#include "psync/automaton.hpp"
#include "psync/generators.hpp"
#include "psync/random.hpp"

// Small strongly connected partial automata for property tests.
inline std::vector<psync::PartialDfa> small_corpus(std::size_t count, std::size_t max_n, std::uint64_t seed, std::size_t alpha = 2) {
  psync::Rng rng(seed);
  std::vector<psync::PartialDfa> out;
  while (out.size() < count) {
    const std::size_t n = 1 + rng.below(static_cast<std::uint32_t>(max_n));
    const double density = 0.5 + 0.5 * rng.unit();
    try {
      out.push_back(psync::gen_random_partial(n, alpha, density, rng.next32()));
    } catch (const std::exception&) {
    }
  }
  return out;
}
