#include "psync/constructions.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "psync/error.hpp"

namespace psync {

namespace {

std::vector<std::string> with_gamma(const PartialDfa& dfa) {
  auto alphabet = dfa.alphabet();
  if (dfa.letter_of(kGammaToken)) throw PreconditionError("alphabet already contains '@g'");
  alphabet.emplace_back(kGammaToken);
  return alphabet;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

PartialDfa fixing(const PartialDfa& dfa) {
  PartialDfa out(dfa.size(), dfa.alphabet());
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      State t = dfa.next(q, a);
      out.set(q, a, t == kUndef ? q : t);
    }
  }
  return out;
}

Word lift_word_to_partial(const PartialDfa& dfa, const StateSet& s, std::span<const Letter> w) {
  if (s.empty()) throw PreconditionError("cannot lift a word for the empty set");
  Word out;
  StateSet current = s;
  for (Letter a : w) {
    StateSet next = image(dfa, current, std::span<const Letter>(&a, 1));
    if (next.empty()) continue;  // the whole image dies under a
    out.push_back(a);
    current = std::move(next);
  }
  return out;
}

std::size_t CollectingTree::depth(std::size_t c) const {
  std::size_t d = 0;
  while (c != root_class) {
    c = parent[c].parent;
    ++d;
  }
  return d;
}

CollectingTree collecting_tree(const PartialDfa& dfa, const Partition& part, std::size_t root_class) {
  if (!is_strongly_connected(dfa)) throw PreconditionError("collecting tree requires a strongly connected automaton");
  if (root_class >= part.count()) throw PreconditionError("root class out of range");
  const std::size_t k = part.count();
  CollectingTree tree{root_class, std::vector<CollectingTree::Edge>(k), {}, part};
  std::vector<bool> seen(k, false);
  std::queue<std::size_t> queue;
  queue.push(root_class);
  seen[root_class] = true;
  while (!queue.empty()) {
    std::size_t d = queue.front();
    queue.pop();
    tree.order.push_back(d);
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      for (std::size_t c = 0; c < k; ++c) {
        if (seen[c] || part.class_next(c, a) != d) continue;
        seen[c] = true;
        tree.parent[c] = {a, d};
        queue.push(c);
      }
    }
  }
  if (tree.order.size() != k) throw InvariantError("quotient of a strongly connected automaton is not strongly connected");
  return tree;
}

PartialDfa collecting(const PartialDfa& dfa, const CollectingTree& tree) {
  PartialDfa out(dfa.size(), with_gamma(dfa));
  const Letter gamma = static_cast<Letter>(dfa.alphabet_size());
  const auto& part = tree.partition;
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      State t = dfa.next(q, a);
      out.set(q, a, t == kUndef ? q : t);
    }
    std::size_t c = part.class_of(q);
    if (c == tree.root_class) {
      out.set(q, gamma, q);
    } else {
      State t = dfa.next(q, tree.parent[c].letter);
      if (t == kUndef) throw InvariantError("tree edge undefined on a member of its class");
      out.set(q, gamma, t);
    }
  }
  return out;
}

Word strip_gamma(const PartialDfa& dfa, const CollectingTree& tree, std::span<const Letter> w) {
  const Letter gamma = static_cast<Letter>(dfa.alphabet_size());
  const auto& part = tree.partition;
  const StateSet& root = part.members(tree.root_class);
  for (Letter x : w)
    if (x > gamma) throw PreconditionError("letter outside the collecting alphabet");
  if (image(collecting(dfa, tree), root, w).size() != 1) throw PreconditionError("word does not synchronize the root class of the collecting automaton");

  Word out;
  std::size_t c = tree.root_class;
  for (Letter x : w) {
    if (x == gamma) {
      if (c == tree.root_class) continue;
      out.push_back(tree.parent[c].letter);
      c = tree.parent[c].parent;
    } else {
      State next = part.class_next(c, x);
      if (next == kUndef) continue;
      out.push_back(x);
      c = next;
    }
  }
  if (image(dfa, root, out).size() != 1) throw InvariantError("stripped word does not synchronize the root class");
  return out;
}

PartialDfa InducedAutomaton::as_dfa() const {
  std::vector<std::string> tokens;
  for (const auto& w : letters) {
    std::string tok = "\"";
    if (w.empty()) tok += "-";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) tok += '.';
      tok += base.token(w[i]);
    }
    tok += '"';
    tokens.push_back(std::move(tok));
  }
  PartialDfa out(states.size(), std::move(tokens));
  for (std::size_t q = 0; q < states.size(); ++q)
    for (std::size_t a = 0; a < letters.size(); ++a) out.set(static_cast<State>(q), static_cast<Letter>(a), next(q, a));
  return out;
}

InducedAutomaton induced(const PartialDfa& dfa, const std::vector<Word>& w1, const std::vector<Word>& w2) {
  if (w1.empty() || w2.empty()) throw PreconditionError("induced automaton needs non-empty word sets");
  StateSet region(dfa.size());
  for (const auto& w : w1) region |= image(dfa, dfa.all_states(), w);
  if (region.empty()) throw PreconditionError("every word of W1 is mortal; induced state set is empty");

  InducedAutomaton out{dfa, region, region.members(), {}, {}};
  std::vector<State> local(dfa.size(), kUndef);
  for (std::size_t i = 0; i < out.states.size(); ++i) local[out.states[i]] = static_cast<State>(i);

  std::map<std::vector<State>, Word> by_action;
  for (const auto& second : w2) {
    for (const auto& first : w1) {
      Word w = concat(second, first);
      std::vector<State> action(out.states.size());
      for (std::size_t i = 0; i < out.states.size(); ++i) {
        State t = dfa.run(out.states[i], w);
        action[i] = t == kUndef ? kUndef : local[t];
        if (t != kUndef && action[i] == kUndef) throw InvariantError("composite letter leaves the induced region");
      }
      auto [it, inserted] = by_action.emplace(std::move(action), w);
      if (!inserted && shortlex_less(w, it->second)) it->second = w;
    }
  }

  std::vector<std::pair<Word, const std::vector<State>*>> letters;
  for (const auto& [action, w] : by_action) letters.emplace_back(w, &action);
  std::sort(letters.begin(), letters.end(), [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });

  out.table.assign(out.states.size() * letters.size(), kUndef);
  for (std::size_t a = 0; a < letters.size(); ++a) {
    out.letters.push_back(letters[a].first);
    const auto& action = *letters[a].second;
    for (std::size_t q = 0; q < out.states.size(); ++q) out.table[q * letters.size() + a] = action[q];
  }
  return out;
}

PartialDfa duplicating(const PartialDfa& dfa) {
  if (!is_complete(dfa)) throw PreconditionError("duplicating automaton requires a complete automaton");
  const std::size_t n = dfa.size();
  PartialDfa out(2 * n, with_gamma(dfa));
  const Letter gamma = static_cast<Letter>(dfa.alphabet_size());
  for (State q = 0; q < n; ++q) {
    const State copy = static_cast<State>(q + n);
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      out.set(q, a, q);
      out.set(copy, a, dfa.next(q, a));
    }
    out.set(q, gamma, copy);
  }
  return out;
}

}  // namespace psync
