#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "psync/automaton.hpp"

namespace psync {

inline constexpr std::size_t kOracleMaxStates = 24;

/// Exact rank thresholds from breadth-first search over reachable images.
struct OracleReport {
  struct Entry {
    bool reachable = false;
    std::size_t length = 0;
    Word witness;  // lexicographically least among the shortest
  };

  /// entries[r] describes words of rank exactly r, for r in 0..n.
  std::vector<Entry> entries;

  std::size_t states() const { return entries.size() - 1; }
  const Entry& at(std::size_t r) const { return entries.at(r); }
  /// Reset threshold, if the automaton is synchronizing.
  std::optional<std::size_t> reset_threshold() const;
  std::optional<std::size_t> threshold(std::size_t r) const;
  /// Smallest non-zero rank of any word.
  std::size_t min_nonzero_rank() const;
  bool synchronizing() const { return entries.size() > 1 && entries[1].reachable; }
};

/// Throws LimitError for more than 24 states.
OracleReport subset_bfs(const PartialDfa& dfa);

struct DuplicatingRow {
  std::size_t rank = 0;
  std::optional<std::size_t> base_threshold;
  std::optional<std::size_t> doubled_threshold;
  bool shape_ok = false;  // the interleaved @g a1 @g a2 ... word reaches the rank
};

struct DuplicatingReport {
  std::vector<DuplicatingRow> rows;  // ranks 1..n-1
  bool holds = true;
};

/// Compares thresholds of a complete strongly connected automaton with those
/// of its duplicating automaton for every rank 1 <= r < n.
DuplicatingReport duplicating_identity_check(const PartialDfa& dfa);

struct ExtremalProfile {
  bool exhaustive = true;
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
};

struct ExtremalResult {
  std::size_t n = 0;
  std::size_t target = 0;  // (n^2 - n) / 2
  std::size_t candidates = 0;
  std::size_t qualifying = 0;  // strongly connected and synchronizing
  std::optional<PartialDfa> best;
  std::size_t best_threshold = 0;
  bool attained() const { return best && best_threshold >= target; }
};

/// Searches binary strongly connected automata whose only undefined
/// transitions leave a single state, maximising the reset threshold.
/// Exhaustive mode fixes the deficient state to 0 (every candidate is
/// isomorphic to such an automaton) and accepts n <= 6.
ExtremalResult extremal_search(std::size_t n, const ExtremalProfile& profile);

}  // namespace psync
