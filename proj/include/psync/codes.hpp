#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psync/automaton.hpp"

namespace psync {

/// A finite prefix code. Letters are single characters (UTF-8 code points);
/// the alphabet is the sorted set of letters that occur in some codeword.
struct PrefixCode {
  std::vector<std::string> alphabet;
  std::vector<Word> words;  // in input order, over `alphabet`

  std::string text(const Word& w) const;
  std::size_t total_length() const;
  std::size_t max_length() const;
};

/// Splits a string into UTF-8 code points. Throws ParseError(0, ...) on
/// malformed input.
std::vector<std::string> split_letters(std::string_view s);

/// Accepts non-empty, duplicate-free, prefix-free codes. Errors name the
/// offending codeword or pair.
PrefixCode validate_code(const std::vector<std::string>& words);

struct LiteralAutomaton {
  PartialDfa dfa;
  std::vector<Word> prefixes;         // prefix of each state
  std::map<Word, State> state_of;     // inverse of `prefixes`
  State root = 0;
  std::size_t height = 0;             // longest codeword minus one

  std::string prefix_text(State q) const;
};

/// States are the proper prefixes in (length, lexicographic) order, so the
/// root is state 0.
LiteralAutomaton literal_automaton(const PrefixCode& code);

struct PrimitiveRoot {
  Word root;
  std::size_t power = 0;
};

/// x = root^power with root primitive; x must be non-empty.
PrimitiveRoot primitive_root(const Word& x);
bool is_primitive(const Word& x);

/// Rank of the literal automaton of a one-word code.
std::size_t one_word_rank(const PrefixCode& code);

struct Conjugate {
  Word u;
  Word v;
  const Word& shorter() const { return v.size() < u.size() ? v : u; }
};

/// A conjugate uv of x with both u and v defined on exactly one state of
/// lit, minimising min(|u|, |v|). Rotations are scanned by start offset and
/// split points left to right; the first minimum wins.
Conjugate weinbaum_conjugate(const Word& x, const LiteralAutomaton& lit);

struct Pivot {
  State state = 0;
  Letter a = 0;  // the two alphabet-least letters defined at the pivot
  Letter b = 0;
  std::vector<State> path;  // states from the root up to, excluding, the pivot
};

/// The state closest to the root with at least two defined letters.
/// Throws PreconditionError for one-word codes.
Pivot pivot_state(const LiteralAutomaton& lit);

/// The filtering map: follows w while the pivot is active, otherwise applies
/// the alphabet-least letter that keeps the active set alive. Stops once w is
/// used up or the output reaches the height.
Word filtering_alpha(const LiteralAutomaton& lit, const Pivot& pivot, const Word& w);

/// True when every state that survives `w` meets the root after some prefix
/// of `w` (the empty prefix included).
bool survivors_pass_root(const LiteralAutomaton& lit, const Word& w);

inline constexpr std::size_t kCandidateCap = std::size_t{1} << 22;

/// ceil(log2 x), with 0 for x <= 1.
std::size_t ceil_log2(std::size_t x);

/// Visits the filtered words α(w) for w over the pivot letters of length
/// ceil(log2(h n)), in lexicographic order of w, keeping those that are
/// non-mortal and pass the root. The visitor returns true to stop.
/// Throws LimitError beyond kCandidateCap candidates.
void visit_through_root(const LiteralAutomaton& lit, const Pivot& pivot, const std::function<bool(const Word& alpha)>& visit);

/// The first through-root filtered word.
Word all_through_root_word(const LiteralAutomaton& lit);

struct PathCompression {
  Word word;
  std::vector<std::size_t> active_sizes;  // |S_i| before each step
};

/// Halving loop on the states of the root-to-pivot path that lie in r.
PathCompression compress_path(const LiteralAutomaton& lit, const Pivot& pivot, const StateSet& r);
Word compress_path_word(const LiteralAutomaton& lit, const StateSet& r);

struct LogRankBounds {
  std::size_t max_length = 0;  // 2h
  std::size_t max_rank = 0;    // ceil(log2 hn) + ceil(log2 h), at least 1
};
LogRankBounds log_rank_bounds(const LiteralAutomaton& lit);

struct LogRankResult {
  Word alpha;                // through-root filtered word
  Word v;                    // path compression of its image
  std::size_t attempts = 0;  // through-root candidates examined
  Word word() const { return concat(alpha, v); }
};

/// α(w) v meeting the length and rank bounds, non-mortal. Through-root
/// candidates are tried in order and the first whose compressed result meets
/// the bounds is returned. Throws InvariantError when none does.
LogRankResult log_rank_search(const LiteralAutomaton& lit);
Word log_rank_word(const LiteralAutomaton& lit);

/// Reset word: the shorter Weinbaum part for one-word codes, otherwise
/// log_rank_word followed by pair compression of its image.
/// Throws NotSynchronizingError naming an incompressible pair.
Word literal_reset_word(const LiteralAutomaton& lit, const PrefixCode& code);

}  // namespace psync
