#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psync {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// Marks an undefined transition. Never a valid state index.
inline constexpr State kUndef = std::numeric_limits<State>::max();

/// A word is a sequence of letter indices into the automaton's alphabet.
using Word = std::vector<Letter>;

/// Reserved token for the fresh letter added by the collecting and
/// duplicating constructions.
inline constexpr std::string_view kGammaToken = "@g";

/// Subset of the states 0..n-1 of some automaton.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : bits_(universe) {}

  static StateSet full(std::size_t universe);
  static StateSet of(std::size_t universe, std::initializer_list<State> states);
  static StateSet of(std::size_t universe, std::span<const State> states);

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  bool contains(State q) const { return q < bits_.size() && bits_.test(q); }
  void insert(State q) { bits_.set(q); }
  void erase(State q) { bits_.reset(q); }

  /// Members in increasing order.
  std::vector<State> members() const;
  /// Smallest member, or kUndef when empty.
  State front() const;

  bool is_subset_of(const StateSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const StateSet& other) const { return bits_.intersects(other.bits_); }

  StateSet& operator&=(const StateSet& other);
  StateSet& operator|=(const StateSet& other);
  StateSet& operator-=(const StateSet& other);

  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
  friend bool operator==(const StateSet& a, const StateSet& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const StateSet& a, const StateSet& b) { return a.bits_ < b.bits_; }

  template <typename F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
      f(static_cast<State>(i));
    }
  }

 private:
  boost::dynamic_bitset<> bits_;
};

/// Partial deterministic automaton without initial or final states.
///
/// States are the dense indices 0..n-1, letters index into the alphabet in
/// declaration order. Every (state, letter) pair holds a target state or
/// kUndef. No sink state is ever added implicitly.
class PartialDfa {
 public:
  /// All transitions start undefined. Throws PreconditionError on n == 0,
  /// an empty alphabet, or empty/duplicate tokens.
  PartialDfa(std::size_t n, std::vector<std::string> alphabet);

  std::size_t size() const noexcept { return n_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::string& token(Letter a) const { return alphabet_.at(a); }
  std::optional<Letter> letter_of(std::string_view token) const;

  State next(State q, Letter a) const { return table_[index(q, a)]; }
  bool defined(State q, Letter a) const { return next(q, a) != kUndef; }
  void set(State q, Letter a, State target);

  /// Action of a whole word on a single state; kUndef once undefined.
  State run(State q, std::span<const Letter> w) const;

  StateSet all_states() const { return StateSet::full(n_); }

  friend bool operator==(const PartialDfa&, const PartialDfa&) = default;

 private:
  std::size_t index(State q, Letter a) const { return static_cast<std::size_t>(q) * alphabet_.size() + a; }

  std::size_t n_;
  std::vector<std::string> alphabet_;
  std::vector<State> table_;
};

StateSet image(const PartialDfa& dfa, const StateSet& states, std::span<const Letter> w);
StateSet preimage(const PartialDfa& dfa, const StateSet& states, std::span<const Letter> w);

/// Size of the image of all states.
std::size_t rank(const PartialDfa& dfa, std::span<const Letter> w);
bool is_mortal(const PartialDfa& dfa, std::span<const Letter> w);

bool is_strongly_connected(const PartialDfa& dfa);
bool is_complete(const PartialDfa& dfa);
/// Some letter is defined on at least one state and undefined on another.
bool is_properly_incomplete(const PartialDfa& dfa);
/// Strongly connected, and every state has as many defined outgoing as
/// incoming transitions.
bool is_eulerian(const PartialDfa& dfa);

/// Shortest word mapping p to q, lexicographically least among the
/// shortest. Throws PreconditionError when dfa is not strongly connected.
Word connecting_word(const PartialDfa& dfa, State p, State q);

/// Letters that are undefined on every state. Such letters are legal but
/// can never occur in a useful synchronizing word.
std::vector<Letter> fully_undefined_letters(const PartialDfa& dfa);

Word concat(Word a, std::span<const Letter> b);

}  // namespace psync
