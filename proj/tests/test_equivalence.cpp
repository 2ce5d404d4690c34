#include <doctest.h>

#include "brute_force.hpp"
#include "psync/codes.hpp"
#include "psync/equivalence.hpp"
#include "psync/error.hpp"
#include "psync/verify.hpp"
#include "test_support.hpp"

using namespace psync;

TEST_CASE("classes of the six-state example") {
  const PartialDfa dfa = six_state_example();
  const Partition part = inseparability_partition(dfa);
  REQUIRE(part.count() == 3);
  CHECK(part.members(0) == StateSet::of(6, {0, 3}));
  CHECK(part.members(1) == StateSet::of(6, {1, 4}));
  CHECK(part.members(2) == StateSet::of(6, {2, 5}));
  CHECK(kappa(part, dfa.all_states()) == 3);
  CHECK(kappa(part, StateSet::of(6, {0, 3})) == 1);
}

TEST_CASE("classes agree with word enumeration") {
  for (const auto& dfa : small_corpus(80, 6, 11)) {
    const Partition part = inseparability_partition(dfa);
    for (State p = 0; p < dfa.size(); ++p)
      for (State q = p + 1; q < dfa.size(); ++q) {
        const bool same = part.class_of(p) == part.class_of(q);
        CHECK(same == brute::inseparable(dfa, p, q));
        if (!same) {
          const Word w = separating_word(dfa, part, p, q);
          CHECK((dfa.run(p, w) == kUndef) != (dfa.run(q, w) == kUndef));
          CHECK(w.size() == brute::shortest_separating_length(dfa, p, q));
          CHECK(w.size() == part.split_level(part.class_of(p), part.class_of(q)));
          CHECK(w.size() <= part.count() - 1);
        }
      }
  }
}

TEST_CASE("level relations end at the inseparability classes") {
  for (const auto& dfa : small_corpus(60, 7, 12)) {
    const Partition part = inseparability_partition(dfa);
    const auto levels = refinement_levels(dfa);
    CHECK(levels.back() == part.class_ids());
    CHECK(levels.size() - 1 == part.stable_level());
    CHECK(part.stable_level() <= part.count());
  }
}

TEST_CASE("class numbering and congruence are validated") {
  PartialDfa dfa(2, {"a"});
  dfa.set(0, 0, 1);
  dfa.set(1, 0, 1);
  CHECK_THROWS_AS(Partition({1, 0}, dfa), InvariantError);
  PartialDfa split(3, {"a"});
  split.set(0, 0, 1);
  split.set(1, 0, 2);
  // 0 and 2 in one class, but 0 a-> 1 is defined and 2 a-> undefined.
  CHECK_THROWS_AS(Partition({0, 1, 0}, split), InvariantError);
}

TEST_CASE("class-reducing words") {
  const PartialDfa dfa = six_state_example();
  const Partition part = inseparability_partition(dfa);
  const Word w = class_reducing_word(dfa, part, dfa.all_states());
  const std::size_t after = kappa(part, image(dfa, dfa.all_states(), w));
  CHECK(after >= 1);
  CHECK(after < 3);
  CHECK(w.size() <= 1);
  CHECK_THROWS_AS(class_reducing_word(dfa, part, StateSet::of(6, {0, 3})), PreconditionError);

  for (const auto& d : small_corpus(60, 7, 13)) {
    const Partition p = inseparability_partition(d);
    const StateSet all = d.all_states();
    if (p.count() < 2) continue;
    const Word c = collapse_to_single_class_word(d, p, all);
    const StateSet img = image(d, all, c);
    CHECK_FALSE(img.empty());
    CHECK(kappa(p, img) == 1);
    const std::size_t k = p.count();
    CHECK(c.size() <= (k - 1) * k / 2);
  }
}

TEST_CASE("quotient automaton") {
  const PartialDfa dfa = six_state_example();
  const Partition part = inseparability_partition(dfa);
  const Quotient q = quotient(dfa, part);
  CHECK(q.dfa.size() == 3);
  for (State s = 0; s < 6; ++s)
    for (Letter a = 0; a < 2; ++a) {
      const State t = dfa.next(s, a);
      CHECK(q.dfa.next(static_cast<State>(part.class_of(s)), a) == (t == kUndef ? kUndef : static_cast<State>(part.class_of(t))));
    }
}

TEST_CASE("square of a primitive word has classes of size two") {
  const PrefixCode code = validate_code({"aabaaabaabaaab"});
  const LiteralAutomaton lit = literal_automaton(code);
  const Partition part = inseparability_partition(lit.dfa);
  CHECK(lit.dfa.size() == 14);
  CHECK(part.count() == 7);
  for (const auto& c : part.classes()) CHECK(c.size() == 2);

  const LiteralAutomaton single = literal_automaton(validate_code({"aabaaab"}));
  CHECK(inseparability_partition(single.dfa).count() == 7);
}
