#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "psync/automaton.hpp"
#include "psync/equivalence.hpp"

namespace psync {

/// Completion where every undefined transition becomes a self-loop.
PartialDfa fixing(const PartialDfa& dfa);

/// Letter-by-letter filter of w: a letter is skipped when it is undefined
/// on the whole current image. The result w' satisfies |w'| <= |w| and
/// image(S, w') is non-empty and contained in the image of S under w in
/// the fixing automaton. Throws PreconditionError on empty S.
Word lift_word_to_partial(const PartialDfa& dfa, const StateSet& s, std::span<const Letter> w);

/// Spanning in-tree of the quotient automaton directed toward root_class.
struct CollectingTree {
  struct Edge {
    Letter letter = 0;
    std::size_t parent = 0;
  };

  std::size_t root_class = 0;
  /// parent[c] is the outgoing edge of class c; unused for the root.
  std::vector<Edge> parent;
  /// Classes in breadth-first order from the root (root first).
  std::vector<std::size_t> order;
  Partition partition;

  std::size_t depth(std::size_t c) const;
};

/// Breadth-first tree in the reversed quotient digraph, exploring letters in
/// alphabet order and then classes in id order. Throws PreconditionError
/// when dfa is not strongly connected.
CollectingTree collecting_tree(const PartialDfa& dfa, const Partition& part, std::size_t root_class);

/// Complete automaton over the alphabet plus `@g`: the fixing automaton on
/// the original letters; `@g` follows the tree edge of each non-root class
/// and is the identity on the root class. `@g` is the last letter.
PartialDfa collecting(const PartialDfa& dfa, const CollectingTree& tree);

/// Rewrites a word over the collecting alphabet that synchronizes the root
/// class into a word over the original alphabet, not longer, synchronizing
/// the root class in dfa itself. Every `@g` becomes the tree letter of the
/// current class (or is dropped on the root class); original letters that
/// are undefined on the whole current class are dropped as well, since the
/// collecting automaton fixes that class under them.
/// Throws PreconditionError if w does not synchronize the root class.
Word strip_gamma(const PartialDfa& dfa, const CollectingTree& tree, std::span<const Letter> w);

/// Restriction of dfa to R = union of image(Q, w1) over W1, with one
/// composite letter per distinct action among the words of W2 W1.
struct InducedAutomaton {
  PartialDfa base;
  StateSet region;
  std::vector<State> states;  // members of region, local index -> base state
  std::vector<Word> letters;  // representative word of each composite letter
  /// transitions over local indices; kUndef when undefined.
  std::vector<State> table;

  State next(std::size_t local, std::size_t letter) const { return table[local * letters.size() + letter]; }

  /// Composite letters are rendered as quoted, dot-separated token lists,
  /// e.g. `"a.b.b"`; the empty word renders as `"-"`.
  PartialDfa as_dfa() const;
};

/// Composite letters with equal action are merged, keeping the shortest and
/// then lexicographically least word. Throws PreconditionError when W1 or W2
/// is empty or R is empty.
InducedAutomaton induced(const PartialDfa& dfa, const std::vector<Word>& w1, const std::vector<Word>& w2);

/// For a complete automaton on n states: 2n states where state i + n is the
/// copy of state i. Original letters fix states < n and act as in dfa on the
/// copies; `@g` sends i to its copy and is undefined on copies.
/// Throws PreconditionError on incomplete input.
PartialDfa duplicating(const PartialDfa& dfa);

}  // namespace psync
