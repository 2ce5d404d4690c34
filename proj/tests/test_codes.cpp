#include <doctest.h>

#include <set>

#include "brute_force.hpp"
#include "psync/codes.hpp"
#include "psync/equivalence.hpp"
#include "psync/error.hpp"
#include "psync/generators.hpp"
#include "psync/io.hpp"
#include "psync/oracle.hpp"
#include "psync/random.hpp"

using namespace psync;

namespace {

LiteralAutomaton lit_of(std::initializer_list<std::string> words) { return literal_automaton(validate_code(words)); }

Word word_of(const LiteralAutomaton& lit, const std::string& text) {
  Word w;
  for (const auto& l : split_letters(text)) w.push_back(*lit.dfa.letter_of(l));
  return w;
}

// m is a concatenation of codewords.
bool in_star(const PrefixCode& code, const Word& m) {
  std::vector<bool> ok(m.size() + 1, false);
  ok[0] = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!ok[i]) continue;
    for (const auto& x : code.words)
      if (i + x.size() <= m.size() && std::equal(x.begin(), x.end(), m.begin() + static_cast<std::ptrdiff_t>(i))) ok[i + x.size()] = true;
  }
  return ok[m.size()];
}

std::string error_of(const std::vector<std::string>& words) {
  try {
    validate_code(words);
  } catch (const PreconditionError& e) {
    return e.what();
  }
  return "";
}

// Canonical relabelling by breadth-first order from `start`.
std::vector<long> canonical(const PartialDfa& dfa, State start) {
  std::vector<long> id(dfa.size(), -1), out;
  std::vector<State> order{start};
  id[start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      const State t = dfa.next(order[i], a);
      if (t != kUndef && id[t] < 0) {
        id[t] = static_cast<long>(order.size());
        order.push_back(t);
      }
    }
  for (State q : order)
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) out.push_back(dfa.next(q, a) == kUndef ? -1 : id[dfa.next(q, a)]);
  return out;
}

std::vector<PrefixCode> random_codes(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PrefixCode> out;
  while (out.size() < count) {
    try {
      out.push_back(gen_random_prefix_code(2 + rng.below(5), 2 + rng.below(6), 2 + rng.below(2), rng.next32()));
    } catch (const LimitError&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("validation") {
  const PrefixCode code = validate_code(parse_code_words(read_file(PSYNC_FIXTURES "/four_words.code")));
  CHECK(code.words.size() == 4);
  CHECK(code.alphabet == std::vector<std::string>{"a", "b"});
  CHECK(code.max_length() == 5);
  CHECK(code.total_length() == 18);
  CHECK(error_of({"a", "ab"}) == "not a prefix code: a is a prefix of ab");
  CHECK(error_of({"ab", "a"}) == "not a prefix code: a is a prefix of ab");
  CHECK(error_of({"", "b"}).find("empty word") != std::string::npos);
  CHECK(error_of({"ab", "ab"}).find("duplicate") != std::string::npos);
  CHECK(error_of({}).find("empty") != std::string::npos);
  CHECK(validate_code({"αβ", "β"}).alphabet == std::vector<std::string>{"α", "β"});
}

TEST_CASE("literal automata") {
  const LiteralAutomaton four = lit_of({"abaaa", "abaab", "abab", "abba"});
  CHECK(four.dfa.size() == 6);
  CHECK(four.height == 4);
  std::vector<std::string> names;
  for (State q = 0; q < 6; ++q) names.push_back(four.prefix_text(q));
  CHECK(names == std::vector<std::string>{"ε", "a", "ab", "aba", "abb", "abaa"});
  CHECK(is_strongly_connected(four.dfa));

  const LiteralAutomaton one = lit_of({"a"});
  CHECK(one.dfa.size() == 1);
  CHECK(one.dfa.next(0, 0) == 0);
  CHECK(lit_of({"ab", "ba"}).dfa.size() == 3);
}

TEST_CASE("literal automata recognize the code star") {
  const std::vector<PrefixCode> codes = {validate_code({"abaaa", "abaab", "abab", "abba"}), validate_code({"ab", "ba", "aa"}), validate_code({"aab"})};
  for (const auto& code : codes) {
    const LiteralAutomaton lit = literal_automaton(code);
    CHECK(lit.dfa.size() <= code.total_length());
    for (const auto& x : code.words) CHECK(image(lit.dfa, StateSet::of(lit.dfa.size(), {lit.root}), x) == StateSet::of(lit.dfa.size(), {lit.root}));
    brute::for_each_word(code.alphabet.size(), std::min<std::size_t>(10, 2 * code.max_length()), [&](const auto& m) {
      const Word w = brute::to_word(m);
      CHECK((lit.dfa.run(lit.root, w) == lit.root) == in_star(code, w));
      return false;
    });
  }
}

TEST_CASE("primitive roots") {
  const LiteralAutomaton lit = lit_of({"ab"});
  (void)lit;
  auto root_of = [](const std::string& s) {
    const PrefixCode c = validate_code({s});
    const PrimitiveRoot r = primitive_root(c.words.front());
    return std::make_pair(c.text(r.root), r.power);
  };
  CHECK(root_of("abab") == std::make_pair(std::string("ab"), std::size_t{2}));
  CHECK(root_of("aab") == std::make_pair(std::string("aab"), std::size_t{1}));
  CHECK(root_of("aaaaaa") == std::make_pair(std::string("a"), std::size_t{6}));
  CHECK(root_of("abaaba") == std::make_pair(std::string("aba"), std::size_t{2}));
  CHECK(root_of("abaab") == std::make_pair(std::string("abaab"), std::size_t{1}));
  CHECK_THROWS_AS(primitive_root({}), PreconditionError);

  // Against the definition: x = y^k with k maximal.
  brute::for_each_word(2, 10, [&](const auto& m) {
    if (m.empty()) return false;
    const Word x = brute::to_word(m);
    std::size_t best = 1;
    for (std::size_t k = 2; k <= x.size(); ++k) {
      if (x.size() % k) continue;
      const std::size_t p = x.size() / k;
      bool ok = true;
      for (std::size_t i = p; i < x.size() && ok; ++i) ok = x[i] == x[i - p];
      if (ok) best = k;
    }
    CHECK(primitive_root(x).power == best);
    return false;
  });
}

TEST_CASE("one-word rank agrees with the oracle") {
  CHECK(one_word_rank(validate_code({"abab"})) == 2);
  CHECK(one_word_rank(validate_code({"aab"})) == 1);
  CHECK(one_word_rank(validate_code({"aabaab"})) == 2);
  CHECK_THROWS_AS(one_word_rank(validate_code({"a", "b"})), PreconditionError);
  brute::for_each_word(2, 8, [&](const auto& m) {
    if (m.empty()) return false;
    std::string s;
    for (auto a : m) s += static_cast<char>('a' + a);
    const PrefixCode code = validate_code({s});
    const LiteralAutomaton lit = literal_automaton(code);
    CHECK(subset_bfs(lit.dfa).min_nonzero_rank() == one_word_rank(code));
    return false;
  });
}

TEST_CASE("quotient of a power is the literal automaton of its root") {
  for (const std::string y : {"ab", "aab", "abb", "aabab"}) {
    for (std::size_t k = 2; k <= 3; ++k) {
      std::string x;
      for (std::size_t i = 0; i < k; ++i) x += y;
      const LiteralAutomaton big = lit_of({x});
      const Partition part = inseparability_partition(big.dfa);
      const Quotient q = quotient(big.dfa, part);
      const LiteralAutomaton small = lit_of({y});
      CHECK(part.count() * k == big.dfa.size());
      CHECK(canonical(q.dfa, static_cast<State>(part.class_of(big.root))) == canonical(small.dfa, small.root));
    }
  }
}

TEST_CASE("Weinbaum conjugates") {
  for (std::size_t k = 1; k <= 6; ++k) {
    const PrefixCode code = gen_oneword_code(k);
    const LiteralAutomaton lit = literal_automaton(code);
    const Conjugate c = weinbaum_conjugate(code.words.front(), lit);
    CHECK(code.text(c.shorter()) == std::string(k + 1, 'a'));
  }
  brute::for_each_word(2, 9, [&](const auto& m) {
    if (m.empty()) return false;
    std::string s;
    for (auto a : m) s += static_cast<char>('a' + a);
    const PrefixCode code = validate_code({s});
    const Word& x = code.words.front();
    const LiteralAutomaton lit = literal_automaton(code);
    if (!is_primitive(x)) {
      CHECK_THROWS_AS(weinbaum_conjugate(x, lit), PreconditionError);
      return false;
    }
    const Conjugate c = weinbaum_conjugate(x, lit);
    CHECK(c.u.size() + c.v.size() == x.size());
    // uv is a rotation of x.
    Word xx = x;
    xx.insert(xx.end(), x.begin(), x.end());
    const Word uv = concat(c.u, c.v);
    CHECK(std::search(xx.begin(), xx.end(), uv.begin(), uv.end()) != xx.end());
    for (const Word* part : {&c.u, &c.v}) {
      std::size_t defined = 0;
      for (State q = 0; q < lit.dfa.size(); ++q) defined += lit.dfa.run(q, *part) != kUndef;
      CHECK(defined == 1);
    }
    CHECK(2 * c.shorter().size() <= x.size());
    CHECK(rank(lit.dfa, c.shorter()) == 1);
    return false;
  });
}

TEST_CASE("pivot selection") {
  const LiteralAutomaton four = lit_of({"abaaa", "abaab", "abab", "abba"});
  const Pivot p = pivot_state(four);
  CHECK(four.prefix_text(p.state) == "ab");
  CHECK(p.path == std::vector<State>{0, 1});
  CHECK(p.a == 0);
  CHECK(p.b == 1);
  CHECK(pivot_state(lit_of({"ab", "b"})).state == 0);
  const LiteralAutomaton aa = lit_of({"aa", "ab"});
  CHECK(aa.prefix_text(pivot_state(aa).state) == "a");
  CHECK_THROWS_AS(pivot_state(lit_of({"abab"})), PreconditionError);
}

TEST_CASE("filtering") {
  const LiteralAutomaton four = lit_of({"abaaa", "abaab", "abab", "abba"});
  const Pivot p = pivot_state(four);
  CHECK(filtering_alpha(four, p, {}).empty());
  const std::size_t len = ceil_log2(four.height * four.dfa.size());
  CHECK(len == 5);
  std::set<Word> short_outputs;
  std::size_t inputs = 0;
  brute::for_each_word(2, len, [&](const auto& m) {
    if (m.size() != len) return false;
    ++inputs;
    const Word alpha = filtering_alpha(four, p, brute::to_word(m));
    CHECK(alpha.size() <= four.height);
    CHECK(rank(four.dfa, alpha) > 0);
    if (alpha.size() < four.height) CHECK(short_outputs.insert(alpha).second);
    return false;
  });
  CHECK(inputs == 32);
}

TEST_CASE("through-root words") {
  const LiteralAutomaton four = lit_of({"abaaa", "abaab", "abab", "abba"});
  const Word w = all_through_root_word(four);
  CHECK(survivors_pass_root(four, w));
  CHECK(rank(four.dfa, w) > 0);
  CHECK(w.size() <= four.height);
  CHECK(all_through_root_word(lit_of({"ab", "b"})).size() <= 1);
  for (const auto& code : random_codes(100, 41)) {
    const LiteralAutomaton lit = literal_automaton(code);
    const Word t = all_through_root_word(lit);
    CHECK(survivors_pass_root(lit, t));
    CHECK(rank(lit.dfa, t) > 0);
    CHECK(t.size() <= lit.height);
  }
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(24) == 5);
  CHECK(ceil_log2(32) == 5);
}

TEST_CASE("path compression halves the active set") {
  const LiteralAutomaton four = lit_of({"abaaa", "abaab", "abab", "abba"});
  CHECK(compress_path_word(four, StateSet::of(6, {3, 4})).empty());
  const Pivot p = pivot_state(four);
  const PathCompression pc = compress_path(four, p, StateSet::of(6, {0, 1}));
  CHECK_FALSE(pc.word.empty());
  CHECK(pc.word.size() <= four.height);
  for (const auto& code : random_codes(150, 42)) {
    const LiteralAutomaton lit = literal_automaton(code);
    const Pivot pv = pivot_state(lit);
    const Word alpha = all_through_root_word(lit);
    const StateSet r = image(lit.dfa, lit.dfa.all_states(), alpha);
    const PathCompression c = compress_path(lit, pv, r);
    for (std::size_t i = 1; i < c.active_sizes.size(); ++i) CHECK(c.active_sizes[i] <= c.active_sizes[i - 1] / 2);
    StateSet on_path(lit.dfa.size());
    for (State q : pv.path) on_path.insert(q);
    if ((r & on_path).empty()) CHECK(c.word.empty());
    else CHECK_FALSE(image(lit.dfa, r & on_path, c.word).empty());
  }
}

TEST_CASE("log-rank words") {
  for (auto words : {std::vector<std::string>{"abaaa", "abaab", "abab", "abba"}, {"ab", "b"}, {"aa", "ab"}, {"a", "b"}, {"abc", "b", "ac"}}) {
    const LiteralAutomaton lit = literal_automaton(validate_code(words));
    const Word w = log_rank_word(lit);
    const LogRankBounds b = log_rank_bounds(lit);
    CHECK(rank(lit.dfa, w) > 0);
    CHECK(rank(lit.dfa, w) <= b.max_rank);
    CHECK(w.size() <= b.max_length);
  }
  const LiteralAutomaton four = lit_of({"abaaa", "abaab", "abab", "abba"});
  CHECK(log_rank_bounds(four).max_length == 8);
  CHECK(log_rank_bounds(four).max_rank == 7);
  CHECK_THROWS_AS(log_rank_word(lit_of({"aab"})), PreconditionError);
}

TEST_CASE("reset words of literal automata") {
  const PrefixCode z = validate_code({"aabaaab"});
  const LiteralAutomaton lz = literal_automaton(z);
  CHECK(format_word(lz.dfa, literal_reset_word(lz, z)) == "a a a");

  const PrefixCode four = validate_code({"abaaa", "abaab", "abab", "abba"});
  const LiteralAutomaton lf = literal_automaton(four);
  const Word w = literal_reset_word(lf, four);
  CHECK(rank(lf.dfa, w) == 1);
  CHECK(w.size() >= *subset_bfs(lf.dfa).reset_threshold());

  const PrefixCode sq = validate_code({"abab"});
  try {
    literal_reset_word(literal_automaton(sq), sq);
    FAIL("expected an error");
  } catch (const NotSynchronizingError& e) {
    CHECK(std::string(e.what()).find("rank 2") != std::string::npos);
  }
  for (const auto& code : random_codes(100, 43)) {
    const LiteralAutomaton lit = literal_automaton(code);
    if (lit.dfa.size() > kOracleMaxStates) continue;
    if (subset_bfs(lit.dfa).synchronizing()) {
      CHECK(rank(lit.dfa, literal_reset_word(lit, code)) == 1);
    } else {
      CHECK_THROWS_AS(literal_reset_word(lit, code), NotSynchronizingError);
    }
  }
}
