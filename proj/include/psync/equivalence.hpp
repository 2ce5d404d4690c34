#pragma once

#include <cstddef>
#include <vector>

#include "psync/automaton.hpp"

namespace psync {

/// Inseparability classes of a partial automaton.
///
/// Two states are inseparable when no word is defined on exactly one of
/// them. Classes are numbered in order of their smallest member. For every
/// pair of distinct classes the partition keeps the refinement level at
/// which they first split and one letter witnessing the split; together
/// with the quotient transitions these rebuild a separating word whose
/// length equals the level.
class Partition {
 public:
  /// `class_of` must number classes in order of their smallest member and
  /// be a congruence of dfa; throws InvariantError otherwise.
  Partition(std::vector<std::size_t> class_of, const PartialDfa& dfa);

  std::size_t count() const noexcept { return classes_.size(); }
  std::size_t class_of(State q) const { return class_of_.at(q); }
  const std::vector<std::size_t>& class_ids() const noexcept { return class_of_; }
  const StateSet& members(std::size_t c) const { return classes_.at(c); }
  const std::vector<StateSet>& classes() const noexcept { return classes_; }

  /// First level k with the two classes apart under the length-<=k
  /// relation. Zero for c == d.
  std::size_t split_level(std::size_t c, std::size_t d) const { return split_level_[c * count() + d]; }
  Letter split_letter(std::size_t c, std::size_t d) const { return split_letter_[c * count() + d]; }

  /// Number of refinement rounds until the level relation stopped changing.
  std::size_t stable_level() const noexcept { return stable_level_; }

  /// Class reached from class c under letter a, or kUndef.
  State class_next(std::size_t c, Letter a) const { return class_next_[c * letters_ + a]; }

 private:
  std::vector<std::size_t> class_of_;
  std::vector<StateSet> classes_;
  std::vector<std::size_t> split_level_;
  std::vector<Letter> split_letter_;
  std::vector<State> class_next_;
  std::size_t letters_ = 0;
  std::size_t stable_level_ = 0;
};

/// Hopcroft refinement of the completion that sends every undefined
/// transition to a fresh sink, the sink being the only accepting state.
/// Split levels come from a level-wise pass over the resulting quotient.
Partition inseparability_partition(const PartialDfa& dfa);

/// Level-wise relations on the states themselves: entry k holds class ids
/// of the length-<=k relation. The last entry is the first level whose
/// successor adds no class. Independent of inseparability_partition.
std::vector<std::vector<std::size_t>> refinement_levels(const PartialDfa& dfa);

/// Number of classes meeting S.
std::size_t kappa(const Partition& part, const StateSet& s);

/// Word defined on exactly one of p and q. Requires p, q in distinct classes.
Word separating_word(const PartialDfa& dfa, const Partition& part, State p, State q);

/// Word w with 1 <= kappa(image(S, w)) < kappa(S), built from the separating
/// word of the pair in S split at the lowest level (ties by state order).
/// Throws PreconditionError when kappa(S) < 2.
Word class_reducing_word(const PartialDfa& dfa, const Partition& part, const StateSet& s);

/// Iterated class_reducing_word until the image of S sits in one class.
Word collapse_to_single_class_word(const PartialDfa& dfa, const Partition& part, const StateSet& s);

struct Quotient {
  PartialDfa dfa;
  std::vector<std::size_t> class_of;
};

/// Automaton on the classes. Throws InvariantError if the partition is not
/// a congruence for the transition function.
Quotient quotient(const PartialDfa& dfa, const Partition& part);

}  // namespace psync
