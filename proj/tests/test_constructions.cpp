#include <doctest.h>

#include <algorithm>

#include "brute_force.hpp"
#include "psync/constructions.hpp"
#include "psync/error.hpp"
#include "psync/generators.hpp"
#include "psync/io.hpp"
#include "psync/oracle.hpp"
#include "psync/synchronization.hpp"
#include "psync/verify.hpp"
#include "test_support.hpp"

using namespace psync;

TEST_CASE("fixing completes with self-loops") {
  const PartialDfa dfa = six_state_example();
  const PartialDfa f = fixing(dfa);
  CHECK(is_complete(f));
  for (State q = 0; q < 6; ++q)
    for (Letter a = 0; a < 2; ++a) CHECK(f.next(q, a) == (dfa.defined(q, a) ? dfa.next(q, a) : q));
  CHECK(fixing(f) == f);
}

TEST_CASE("lifted words stay alive inside the fixing image") {
  Rng rng(5);
  for (const auto& dfa : small_corpus(60, 6, 21)) {
    const PartialDfa f = fixing(dfa);
    for (int trial = 0; trial < 20; ++trial) {
      StateSet s(dfa.size());
      while (s.empty())
        for (State q = 0; q < dfa.size(); ++q)
          if (rng.below(2)) s.insert(q);
      Word w(rng.below(10));
      for (auto& a : w) a = rng.below(static_cast<std::uint32_t>(dfa.alphabet_size()));
      const Word lifted = lift_word_to_partial(dfa, s, w);
      const StateSet got = image(dfa, s, lifted);
      CHECK_FALSE(got.empty());
      CHECK(got.is_subset_of(image(f, s, w)));
      CHECK(lifted.size() <= w.size());
      // A subsequence of w.
      auto it = w.begin();
      for (Letter a : lifted) {
        it = std::find(it, w.end(), a);
        REQUIRE(it != w.end());
        ++it;
      }
    }
  }
  CHECK_THROWS_AS(lift_word_to_partial(six_state_example(), StateSet(6), Word{0}), PreconditionError);
}

TEST_CASE("collecting tree and automaton") {
  const PartialDfa dfa = six_state_example();
  const Partition part = inseparability_partition(dfa);
  for (std::size_t root = 0; root < part.count(); ++root) {
    const CollectingTree tree = collecting_tree(dfa, part, root);
    CHECK(tree.root_class == root);
    CHECK(tree.order.front() == root);
    CHECK(tree.order.size() == part.count());
    for (std::size_t c = 0; c < part.count(); ++c) {
      if (c == root) {
        CHECK(tree.depth(c) == 0);
        continue;
      }
      CHECK(part.class_next(c, tree.parent[c].letter) == tree.parent[c].parent);
      CHECK(tree.depth(c) == tree.depth(tree.parent[c].parent) + 1);
    }
    const PartialDfa col = collecting(dfa, tree);
    CHECK(is_complete(col));
    CHECK(col.alphabet_size() == 3);
    CHECK(col.token(2) == "@g");
    for (State q = 0; q < 6; ++q) {
      const std::size_t c = part.class_of(q);
      CHECK(col.next(q, 2) == (c == root ? q : dfa.next(q, tree.parent[c].letter)));
      for (Letter a = 0; a < 2; ++a) CHECK(col.next(q, a) == (dfa.defined(q, a) ? dfa.next(q, a) : q));
    }
  }
  CHECK_THROWS_AS(collecting_tree(read_dfa_file(PSYNC_FIXTURES "/not_connected.dfa"), inseparability_partition(read_dfa_file(PSYNC_FIXTURES "/not_connected.dfa")), 0),
                  PreconditionError);
}

TEST_CASE("stripping the fresh letter keeps synchronization of the root class") {
  for (const auto& dfa : small_corpus(80, 7, 22)) {
    const Reduction red = reduction_to_complete(dfa);
    const SyncResult res = greedy_min_rank(red.automaton);
    if (res.final_rank != 1) continue;
    const StateSet root = red.tree.partition.members(red.tree.root_class);
    const Word stripped = strip_gamma(dfa, red.tree, res.word);
    CHECK(stripped.size() <= res.word.size());
    CHECK(image(dfa, root, stripped).size() == 1);
    CHECK(std::none_of(stripped.begin(), stripped.end(), [&](Letter a) { return a >= dfa.alphabet_size(); }));
  }
}

TEST_CASE("root class is the smallest class") {
  for (const auto& dfa : small_corpus(40, 7, 23)) {
    const Reduction red = reduction_to_complete(dfa);
    const auto& part = red.tree.partition;
    for (std::size_t c = 0; c < part.count(); ++c) {
      CHECK(part.members(red.tree.root_class).size() <= part.members(c).size());
      if (part.members(c).size() == part.members(red.tree.root_class).size()) CHECK(red.tree.root_class <= c);
    }
  }
}

TEST_CASE("induced automaton") {
  const PartialDfa dfa = six_state_example();
  const Word b{1};
  const InducedAutomaton ind = induced(dfa, {b}, {Word{}, Word{0}, Word{1}, Word{0, 0}, Word{0, 1}});
  CHECK(ind.region == StateSet::of(6, {0, 1, 4}));
  CHECK(ind.states == std::vector<State>{0, 1, 4});
  // Each letter acts on the region as its representative word does in dfa.
  for (std::size_t l = 0; l < ind.letters.size(); ++l)
    for (std::size_t i = 0; i < ind.states.size(); ++i) {
      const State t = dfa.run(ind.states[i], ind.letters[l]);
      const State local = ind.next(i, l);
      CHECK((local == kUndef ? kUndef : ind.states[local]) == t);
      if (t != kUndef) CHECK(ind.region.contains(t));
    }
  // Distinct letters have distinct actions.
  for (std::size_t l = 0; l < ind.letters.size(); ++l)
    for (std::size_t m = l + 1; m < ind.letters.size(); ++m) {
      bool differ = false;
      for (std::size_t i = 0; i < ind.states.size(); ++i) differ = differ || ind.next(i, l) != ind.next(i, m);
      CHECK(differ);
    }
  const PartialDfa as = ind.as_dfa();
  CHECK(as.size() == 3);
  CHECK(as.alphabet_size() == ind.letters.size());
  CHECK(as.token(0).front() == '"');
  CHECK_THROWS_AS(induced(dfa, {}, {Word{}}), PreconditionError);
}

TEST_CASE("induced automaton with all short words synchronizes a synchronizing automaton") {
  const PartialDfa dfa = six_state_example();
  std::vector<Word> w2;
  brute::for_each_word(2, 5, [&](const auto& w) {
    w2.push_back(brute::to_word(w));
    return false;
  });
  const Word w{1};
  const InducedAutomaton ind = induced(dfa, {w}, w2);
  const PartialDfa b = ind.as_dfa();
  const auto rt = subset_bfs(b).reset_threshold();
  REQUIRE(rt);
  CHECK(*subset_bfs(dfa).reset_threshold() <= w.size() + (w.size() + 5) * *rt);
}

TEST_CASE("duplicating automaton") {
  const PartialDfa c = gen_cerny(3);
  const PartialDfa d = duplicating(c);
  CHECK(d.size() == 6);
  CHECK(d.token(2) == "@g");
  for (State q = 0; q < 3; ++q) {
    for (Letter a = 0; a < 2; ++a) {
      CHECK(d.next(q, a) == q);
      CHECK(d.next(q + 3, a) == c.next(q, a));
    }
    CHECK(d.next(q, 2) == q + 3);
    CHECK(d.next(q + 3, 2) == kUndef);
  }
  CHECK(is_properly_incomplete(d));
  CHECK_THROWS_AS(duplicating(six_state_example()), PreconditionError);
}
