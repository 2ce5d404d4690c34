#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "psync/automaton.hpp"
#include "psync/constructions.hpp"

namespace psync {

/// Distances to compression for every unordered pair of states.
///
/// A pair compresses under a word when exactly one image remains: the two
/// states merge, or exactly one of them dies. Distances come from one
/// backward breadth-first pass seeded with all single-letter compressions.
class PairTable {
 public:
  static constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

  explicit PairTable(const PartialDfa& dfa);

  std::size_t states() const noexcept { return n_; }
  std::size_t distance(State p, State q) const { return dist_[index(p, q)]; }
  /// First letter of a shortest compressing word (undefined for infinite pairs).
  Letter first_letter(State p, State q) const { return letter_[index(p, q)]; }
  bool compressible(State p, State q) const { return distance(p, q) != kInfinite; }

  /// Shortest compressing word for {p, q}; empty when incompressible.
  Word compressing_word(const PartialDfa& dfa, State p, State q) const;

  /// An incompressible pair, if any, smallest in lexicographic order.
  std::optional<std::pair<State, State>> incompressible_pair() const;

 private:
  std::size_t index(State p, State q) const {
    if (p > q) std::swap(p, q);
    return static_cast<std::size_t>(p) * n_ + q;
  }

  std::size_t n_;
  std::vector<std::size_t> dist_;
  std::vector<Letter> letter_;
};

PairTable pair_table(const PartialDfa& dfa);

/// Throws PreconditionError for automata that are not strongly connected;
/// the general problem is PSPACE-complete and not attempted.
bool is_synchronizing(const PartialDfa& dfa);

struct SyncStep {
  std::size_t subset_size = 0;  // size of the image after this step
  Word subword;
};

struct SyncResult {
  Word word;
  std::size_t final_rank = 0;
  std::vector<SyncStep> trace;
};

/// Replays a trace from the full state set. True when the concatenated
/// subwords equal result.word and every recorded size matches.
bool replay_matches(const PartialDfa& dfa, const SyncResult& result);

/// Pair-compression greedy starting from `start`: repeatedly applies the
/// shortest compressing word of the closest pair (ties by pair order) until
/// no pair in the current image is compressible.
SyncResult greedy_compress(const PartialDfa& dfa, const PairTable& table, const StateSet& start);

/// Greedy from the full state set. On strongly connected input the final
/// rank is the minimal non-zero rank; rank 1 means the word is reset.
SyncResult greedy_min_rank(const PartialDfa& dfa);

/// Minimal-rank word through the fixing automaton: greedy there, lifted back,
/// then class-reducing words while the image meets two classes and pair
/// compression inside a single class.
SyncResult min_rank_word_via_fixing(const PartialDfa& dfa);

struct Reduction {
  PartialDfa automaton;
  CollectingTree tree;
};

/// Collecting automaton for the tree rooted at the smallest inseparability
/// class (ties by least state). Synchronizing iff dfa is.
Reduction reduction_to_complete(const PartialDfa& dfa);

struct ResetPipeline {
  Word collapse;  // maps Q into a single class [p]
  Word route;     // maps [p] into the root class
  Word finish;    // synchronizes the root class
  Word word() const;
};

/// Reset word assembled as collapse . route . finish, with the finishing part
/// obtained from a reset word of the collecting automaton.
/// Throws NotSynchronizingError when there is no reset word.
ResetPipeline reset_pipeline_via_collecting(const PartialDfa& dfa);
Word reset_word_via_collecting(const PartialDfa& dfa);

enum class RankSearch { greedy, oracle };

/// Word of non-zero rank at most `target`. Greedy mode truncates the greedy
/// trace at the first small enough image; oracle mode returns a shortest one
/// (n <= 24). Throws PreconditionError when no such word exists.
Word rank_target_word(const PartialDfa& dfa, std::size_t target, RankSearch mode = RankSearch::greedy);

}  // namespace psync
