#include <doctest.h>

#include <algorithm>

#include "brute_force.hpp"
#include "psync/codes.hpp"
#include "psync/error.hpp"
#include "psync/generators.hpp"
#include "psync/io.hpp"
#include "psync/oracle.hpp"
#include "psync/verify.hpp"
#include "test_support.hpp"

using namespace psync;

TEST_CASE("oracle on the six-state example") {
  const PartialDfa dfa = six_state_example();
  const OracleReport r = subset_bfs(dfa);
  CHECK(r.states() == 6);
  CHECK(r.reset_threshold() == std::optional<std::size_t>(3));
  CHECK(format_word(dfa, r.at(1).witness) == "b a b");
  CHECK(r.min_nonzero_rank() == 1);
  CHECK(r.synchronizing());
  CHECK(r.at(6).length == 0);
}

TEST_CASE("oracle thresholds and witnesses agree with enumeration") {
  for (const auto& dfa : small_corpus(40, 5, 51)) {
    const OracleReport r = subset_bfs(dfa);
    for (std::size_t k = 0; k <= dfa.size(); ++k) {
      const auto& e = r.at(k);
      for (const Letter a : e.witness) CHECK(a < dfa.alphabet_size());
      if (!e.reachable) {
        CHECK_FALSE(brute::shortest_of_rank(dfa, k, 9));
        continue;
      }
      CHECK(rank(dfa, e.witness) == k);
      CHECK(e.witness.size() == e.length);
      if (e.length <= 12) {
        const auto w = brute::shortest_of_rank(dfa, k, e.length);
        REQUIRE(w);
        CHECK(*w == e.witness);
      }
    }
  }
}

TEST_CASE("mortal witnesses are shortest") {
  for (const auto& dfa : small_corpus(60, 8, 52)) {
    const OracleReport r = subset_bfs(dfa);
    if (!r.at(0).reachable) continue;
    CHECK(is_mortal(dfa, r.at(0).witness));
    if (r.at(0).length >= 1 && r.at(0).length <= 10) CHECK_FALSE(brute::shortest_of_rank(dfa, 0, r.at(0).length - 1));
  }
}

TEST_CASE("known thresholds") {
  for (std::size_t n = 1; n <= 7; ++n) CHECK(subset_bfs(gen_cerny(n)).reset_threshold() == (n - 1) * (n - 1));
  for (std::size_t k = 1; k <= 6; ++k) {
    const LiteralAutomaton lit = literal_automaton(gen_oneword_code(k));
    CHECK(subset_bfs(lit.dfa).reset_threshold() == k + 1);
  }
  CHECK(subset_bfs(read_dfa_file(PSYNC_FIXTURES "/lit_abab.dfa")).min_nonzero_rank() == 2);
  CHECK_FALSE(subset_bfs(read_dfa_file(PSYNC_FIXTURES "/lit_abab.dfa")).reset_threshold());
}

TEST_CASE("oracle size guardrail") {
  CHECK_THROWS_AS(subset_bfs(PartialDfa(25, {"a"})), LimitError);
  CHECK_NOTHROW(subset_bfs(gen_cerny(12)));
}

TEST_CASE("duplicating doubles thresholds") {
  const DuplicatingReport c4 = duplicating_identity_check(gen_cerny(4));
  CHECK(c4.holds);
  REQUIRE(c4.rows.size() == 3);
  CHECK(c4.rows[0].rank == 1);
  CHECK(c4.rows[0].base_threshold == std::optional<std::size_t>(9));
  CHECK(c4.rows[0].doubled_threshold == std::optional<std::size_t>(18));
  CHECK(c4.rows[0].shape_ok);

  PartialDfa one(1, {"a"});
  one.set(0, 0, 0);
  const DuplicatingReport vacuous = duplicating_identity_check(one);
  CHECK(vacuous.rows.empty());
  CHECK(vacuous.holds);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DuplicatingReport r = duplicating_identity_check(gen_random_partial(2 + seed % 5, 2, 1.0, seed));
    CHECK(r.holds);
  }
  CHECK_THROWS_AS(duplicating_identity_check(six_state_example()), PreconditionError);
}

TEST_CASE("extremal search") {
  const ExtremalResult two = extremal_search(2, {});
  CHECK(two.target == 1);
  CHECK(two.candidates == 20);
  CHECK(two.attained());
  REQUIRE(two.best);
  CHECK(is_properly_incomplete(*two.best));
  CHECK(subset_bfs(*two.best).reset_threshold() == two.best_threshold);

  const ExtremalResult three = extremal_search(3, {});
  CHECK(three.target == 3);
  CHECK(three.attained());
  REQUIRE(three.best);
  CHECK(is_strongly_connected(*three.best));
  CHECK(subset_bfs(*three.best).reset_threshold() == three.best_threshold);

  const ExtremalResult single = extremal_search(1, {});
  CHECK(single.candidates == 0);
  CHECK_FALSE(single.attained());

  ExtremalProfile random;
  random.exhaustive = false;
  random.seed = 9;
  random.trials = 500;
  const ExtremalResult a = extremal_search(5, random);
  const ExtremalResult b = extremal_search(5, random);
  CHECK(a.candidates == 500);
  CHECK(a.best_threshold == b.best_threshold);
  CHECK(a.best == b.best);
  if (a.best) CHECK(subset_bfs(*a.best).reset_threshold() == a.best_threshold);
  CHECK_THROWS_AS(extremal_search(7, {}), LimitError);
}

TEST_CASE("exhaustive search agrees with plain enumeration at three states") {
  // Every binary automaton on 3 states, any single deficient state.
  std::size_t best = 0;
  std::vector<std::size_t> digits(6, 0);
  for (std::size_t code = 0; code < 4096; ++code) {
    std::size_t c = code;
    for (auto& d : digits) {
      d = c % 4;
      c /= 4;
    }
    PartialDfa dfa(3, {"a", "b"});
    std::size_t deficient = 0;
    for (State q = 0; q < 3; ++q) {
      bool hole = false;
      for (Letter a = 0; a < 2; ++a) {
        if (digits[q * 2 + a] == 3) {
          hole = true;
        } else {
          dfa.set(q, a, static_cast<State>(digits[q * 2 + a]));
        }
      }
      deficient += hole;
    }
    if (deficient != 1 || !brute::strongly_connected(dfa)) continue;
    if (const auto w = brute::shortest_of_rank(dfa, 1, 8)) best = std::max(best, w->size());
  }
  CHECK(extremal_search(3, {}).best_threshold == best);
}
