#include "psync/codes.hpp"

#include <algorithm>
#include <set>

#include "psync/error.hpp"
#include "psync/synchronization.hpp"

namespace psync {

std::string PrefixCode::text(const Word& w) const {
  std::string out;
  for (Letter a : w) out += alphabet.at(a);
  return out;
}

std::size_t PrefixCode::total_length() const {
  std::size_t total = 0;
  for (const auto& w : words) total += w.size();
  return total;
}

std::size_t PrefixCode::max_length() const {
  std::size_t m = 0;
  for (const auto& w : words) m = std::max(m, w.size());
  return m;
}

std::vector<std::string> split_letters(std::string_view s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) throw ParseError(0, "malformed UTF-8 in codeword");
    for (std::size_t k = 1; k < len; ++k)
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) throw ParseError(0, "malformed UTF-8 in codeword");
    out.emplace_back(s.substr(i, len));
    i += len;
  }
  return out;
}

PrefixCode validate_code(const std::vector<std::string>& words) {
  if (words.empty()) throw PreconditionError("code is empty");
  std::vector<std::vector<std::string>> split;
  std::set<std::string> letters;
  for (const auto& w : words) {
    if (w.empty()) throw PreconditionError("code contains the empty word");
    split.push_back(split_letters(w));
    letters.insert(split.back().begin(), split.back().end());
  }
  PrefixCode code;
  code.alphabet.assign(letters.begin(), letters.end());
  for (const auto& s : split) {
    Word w;
    for (const auto& l : s) w.push_back(static_cast<Letter>(std::lower_bound(code.alphabet.begin(), code.alphabet.end(), l) - code.alphabet.begin()));
    code.words.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i == j) continue;
      const Word& x = code.words[i];
      const Word& y = code.words[j];
      if (x == y && i < j) throw PreconditionError("duplicate codeword " + words[i]);
      if (x.size() < y.size() && std::equal(x.begin(), x.end(), y.begin())) {
        throw PreconditionError("not a prefix code: " + words[i] + " is a prefix of " + words[j]);
      }
    }
  }
  return code;
}

std::string LiteralAutomaton::prefix_text(State q) const {
  std::string out;
  for (Letter a : prefixes.at(q)) out += dfa.token(a);
  return out.empty() ? "ε" : out;
}

LiteralAutomaton literal_automaton(const PrefixCode& code) {
  auto shortlex = [](const Word& x, const Word& y) { return x.size() != y.size() ? x.size() < y.size() : x < y; };
  std::set<Word, decltype(shortlex)> proper(shortlex);
  std::set<Word> members(code.words.begin(), code.words.end());
  for (const auto& w : code.words)
    for (std::size_t len = 0; len < w.size(); ++len) proper.insert(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len)));

  LiteralAutomaton lit{PartialDfa(proper.size(), code.alphabet), {}, {}, 0, code.max_length() - 1};
  lit.prefixes.assign(proper.begin(), proper.end());
  for (State q = 0; q < lit.prefixes.size(); ++q) lit.state_of.emplace(lit.prefixes[q], q);
  for (State q = 0; q < lit.prefixes.size(); ++q) {
    for (Letter a = 0; a < code.alphabet.size(); ++a) {
      Word next = lit.prefixes[q];
      next.push_back(a);
      if (members.count(next)) {
        lit.dfa.set(q, a, lit.root);
      } else if (auto it = lit.state_of.find(next); it != lit.state_of.end()) {
        lit.dfa.set(q, a, it->second);
      }
    }
  }
  return lit;
}

PrimitiveRoot primitive_root(const Word& x) {
  if (x.empty()) throw PreconditionError("primitive root of the empty word");
  // Failure function; the smallest period is |x| - border.
  std::vector<std::size_t> fail(x.size() + 1, 0);
  for (std::size_t i = 1, k = 0; i < x.size(); ++i) {
    while (k > 0 && x[i] != x[k]) k = fail[k];
    if (x[i] == x[k]) ++k;
    fail[i + 1] = k;
  }
  std::size_t period = x.size() - fail[x.size()];
  if (x.size() % period != 0) period = x.size();
  return {Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(period)), x.size() / period};
}

bool is_primitive(const Word& x) { return primitive_root(x).power == 1; }

std::size_t one_word_rank(const PrefixCode& code) {
  if (code.words.size() != 1) throw PreconditionError("one-word rank needs a code with exactly one word");
  return primitive_root(code.words.front()).power;
}

namespace {

std::size_t defined_count(const PartialDfa& dfa, const Word& w) {
  std::size_t count = 0;
  for (State q = 0; q < dfa.size(); ++q)
    if (dfa.run(q, w) != kUndef) ++count;
  return count;
}

}  // namespace

Conjugate weinbaum_conjugate(const Word& x, const LiteralAutomaton& lit) {
  if (!is_primitive(x)) throw PreconditionError("word is not primitive");
  std::optional<Conjugate> best;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Word rotated(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
    rotated.insert(rotated.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
    for (std::size_t j = 0; j <= rotated.size(); ++j) {
      Conjugate c{Word(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(j)), Word(rotated.begin() + static_cast<std::ptrdiff_t>(j), rotated.end())};
      if (best && std::min(c.u.size(), c.v.size()) >= std::min(best->u.size(), best->v.size())) continue;
      if (defined_count(lit.dfa, c.u) == 1 && defined_count(lit.dfa, c.v) == 1) best = std::move(c);
    }
  }
  if (!best) throw InvariantError("no conjugate splits into two single-state words");
  return *best;
}

Pivot pivot_state(const LiteralAutomaton& lit) {
  const PartialDfa& dfa = lit.dfa;
  Pivot pivot;
  State q = lit.root;
  for (std::size_t step = 0; step <= dfa.size(); ++step) {
    std::vector<Letter> defined;
    for (Letter a = 0; a < dfa.alphabet_size(); ++a)
      if (dfa.defined(q, a)) defined.push_back(a);
    if (defined.size() >= 2) {
      pivot.state = q;
      pivot.a = defined[0];
      pivot.b = defined[1];
      return pivot;
    }
    pivot.path.push_back(q);
    q = dfa.next(q, defined.front());
    if (q == lit.root) break;
  }
  throw PreconditionError("no state has two defined letters (one-word code)");
}

Word filtering_alpha(const LiteralAutomaton& lit, const Pivot& pivot, const Word& w) {
  const PartialDfa& dfa = lit.dfa;
  Word u;
  if (w.empty() || lit.height == 0) return u;
  StateSet active = dfa.all_states();
  std::size_t next = 0;
  while (true) {
    Letter y = 0;
    if (active.contains(pivot.state)) {
      y = w[next++];
    } else {
      while (y < dfa.alphabet_size() && image(dfa, active, std::span<const Letter>(&y, 1)).empty()) ++y;
      if (y == dfa.alphabet_size()) throw InvariantError("no letter keeps the active set alive");
    }
    active = image(dfa, active, std::span<const Letter>(&y, 1));
    u.push_back(y);
    if (next == w.size() || u.size() >= lit.height) break;
  }
  return u;
}

bool survivors_pass_root(const LiteralAutomaton& lit, const Word& w) {
  for (State q = 0; q < lit.dfa.size(); ++q) {
    bool met = q == lit.root;
    State s = q;
    for (Letter a : w) {
      s = lit.dfa.next(s, a);
      if (s == kUndef) break;
      met = met || s == lit.root;
    }
    if (s != kUndef && !met) return false;
  }
  return true;
}

std::size_t ceil_log2(std::size_t x) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

void visit_through_root(const LiteralAutomaton& lit, const Pivot& pivot, const std::function<bool(const Word& alpha)>& visit) {
  const std::size_t len = ceil_log2(lit.height * lit.dfa.size());
  if (len >= 63 || (std::size_t{1} << len) > kCandidateCap) {
    throw LimitError("through-root search needs 2^" + std::to_string(len) + " candidates, cap is 2^22");
  }
  const Letter lo = std::min(pivot.a, pivot.b), hi = std::max(pivot.a, pivot.b);
  Word w(len);
  for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
    for (std::size_t i = 0; i < len; ++i) w[i] = (bits >> (len - 1 - i) & 1) ? hi : lo;
    Word alpha = filtering_alpha(lit, pivot, w);
    if (image(lit.dfa, lit.dfa.all_states(), alpha).empty() || !survivors_pass_root(lit, alpha)) continue;
    if (visit(alpha)) return;
  }
}

Word all_through_root_word(const LiteralAutomaton& lit) {
  const Pivot pivot = pivot_state(lit);
  std::optional<Word> found;
  visit_through_root(lit, pivot, [&](const Word& alpha) {
    found = alpha;
    return true;
  });
  if (!found) throw InvariantError("no through-root filtered word exists");
  return *found;
}

PathCompression compress_path(const LiteralAutomaton& lit, const Pivot& pivot, const StateSet& r) {
  const PartialDfa& dfa = lit.dfa;
  PathCompression out;
  StateSet on_path(dfa.size());
  std::vector<std::size_t> depth(dfa.size(), 0);
  for (std::size_t i = 0; i < pivot.path.size(); ++i) {
    on_path.insert(pivot.path[i]);
    depth[pivot.path[i]] = i;
  }
  depth[pivot.state] = pivot.path.size();

  StateSet active = r & on_path;
  while (!active.empty()) {
    out.active_sizes.push_back(active.size());
    // Route the active state nearest to the pivot onto it.
    State deepest = active.front();
    active.for_each([&](State q) {
      if (depth[q] > depth[deepest]) deepest = q;
    });
    Word step;
    for (std::size_t i = depth[deepest]; i < pivot.path.size(); ++i) {
      State q = pivot.path[i];
      Letter a = 0;
      while (!dfa.defined(q, a)) ++a;
      step.push_back(a);
    }
    StateSet after = image(dfa, active, step);
    StateSet inside = after & on_path;
    if (!inside.empty()) {
      Letter kill = pivot.a;
      for (Letter c : {std::min(pivot.a, pivot.b), std::max(pivot.a, pivot.b)}) {
        std::size_t killed = 0;
        inside.for_each([&](State q) {
          if (!dfa.defined(q, c)) ++killed;
        });
        if (2 * killed >= inside.size()) {
          kill = c;
          break;
        }
      }
      step.push_back(kill);
      after.erase(pivot.state);
      active = image(dfa, after, std::span<const Letter>(&kill, 1));
    } else {
      active = StateSet(dfa.size());
    }
    out.word.insert(out.word.end(), step.begin(), step.end());
    if (out.word.size() >= lit.height) break;
  }
  return out;
}

Word compress_path_word(const LiteralAutomaton& lit, const StateSet& r) { return compress_path(lit, pivot_state(lit), r).word; }

LogRankBounds log_rank_bounds(const LiteralAutomaton& lit) {
  const std::size_t h = lit.height;
  return {2 * h, std::max<std::size_t>(1, ceil_log2(h * lit.dfa.size()) + ceil_log2(h))};
}

LogRankResult log_rank_search(const LiteralAutomaton& lit) {
  const Pivot pivot = pivot_state(lit);
  const LogRankBounds bounds = log_rank_bounds(lit);
  std::optional<LogRankResult> found;
  std::size_t attempts = 0;
  visit_through_root(lit, pivot, [&](const Word& alpha) {
    ++attempts;
    const StateSet r = image(lit.dfa, lit.dfa.all_states(), alpha);
    LogRankResult candidate{alpha, compress_path(lit, pivot, r).word, attempts};
    const Word w = candidate.word();
    const std::size_t k = rank(lit.dfa, w);
    if (k == 0 || w.size() > bounds.max_length || k > bounds.max_rank) return false;
    found = std::move(candidate);
    return true;
  });
  if (!found) {
    throw InvariantError("no through-root candidate meets length " + std::to_string(bounds.max_length) + " and rank " + std::to_string(bounds.max_rank) + " (" +
                         std::to_string(attempts) + " tried)");
  }
  return *found;
}

Word log_rank_word(const LiteralAutomaton& lit) { return log_rank_search(lit).word(); }

Word literal_reset_word(const LiteralAutomaton& lit, const PrefixCode& code) {
  if (code.words.size() == 1) {
    const PrimitiveRoot pr = primitive_root(code.words.front());
    if (pr.power > 1) throw NotSynchronizingError("not synchronizing: rank " + std::to_string(pr.power));
    return weinbaum_conjugate(code.words.front(), lit).shorter();
  }
  const PairTable table = pair_table(lit.dfa);
  if (auto pair = table.incompressible_pair()) {
    throw NotSynchronizingError("not synchronizing: pair {" + std::to_string(pair->first) + ", " + std::to_string(pair->second) + "} (prefixes " +
                                lit.prefix_text(pair->first) + ", " + lit.prefix_text(pair->second) + ") is incompressible");
  }
  Word w = log_rank_word(lit);
  const SyncResult rest = greedy_compress(lit.dfa, table, image(lit.dfa, lit.dfa.all_states(), w));
  w.insert(w.end(), rest.word.begin(), rest.word.end());
  if (rank(lit.dfa, w) != 1) throw InvariantError("literal reset word does not have rank 1");
  return w;
}

}  // namespace psync
