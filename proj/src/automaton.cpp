#include "psync/automaton.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

#include "psync/error.hpp"

namespace psync {

StateSet StateSet::full(std::size_t universe) {
  StateSet s(universe);
  s.bits_.set();
  return s;
}

StateSet StateSet::of(std::size_t universe, std::initializer_list<State> states) {
  return of(universe, std::span<const State>(states.begin(), states.size()));
}

StateSet StateSet::of(std::size_t universe, std::span<const State> states) {
  StateSet s(universe);
  for (State q : states) s.insert(q);
  return s;
}

std::vector<State> StateSet::members() const {
  std::vector<State> out;
  out.reserve(size());
  for_each([&](State q) { out.push_back(q); });
  return out;
}

State StateSet::front() const {
  auto i = bits_.find_first();
  return i == boost::dynamic_bitset<>::npos ? kUndef : static_cast<State>(i);
}

StateSet& StateSet::operator&=(const StateSet& other) {
  bits_ &= other.bits_;
  return *this;
}

StateSet& StateSet::operator|=(const StateSet& other) {
  bits_ |= other.bits_;
  return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) {
  bits_ -= other.bits_;
  return *this;
}

PartialDfa::PartialDfa(std::size_t n, std::vector<std::string> alphabet)
    : n_(n), alphabet_(std::move(alphabet)), table_(n_ * alphabet_.size(), kUndef) {
  if (n_ == 0) throw PreconditionError("automaton needs at least one state");
  if (alphabet_.empty()) throw PreconditionError("automaton needs at least one letter");
  std::unordered_set<std::string_view> seen;
  for (const auto& tok : alphabet_) {
    if (tok.empty()) throw PreconditionError("empty alphabet token");
    if (!seen.insert(tok).second) throw PreconditionError("duplicate alphabet token '" + tok + "'");
  }
}

std::optional<Letter> PartialDfa::letter_of(std::string_view token) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), token);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<Letter>(it - alphabet_.begin());
}

void PartialDfa::set(State q, Letter a, State target) {
  if (q >= n_ || a >= alphabet_.size()) throw PreconditionError("transition source out of range");
  if (target != kUndef && target >= n_) throw PreconditionError("transition target out of range");
  table_[index(q, a)] = target;
}

State PartialDfa::run(State q, std::span<const Letter> w) const {
  for (Letter a : w) {
    if (q == kUndef) break;
    q = next(q, a);
  }
  return q;
}

StateSet image(const PartialDfa& dfa, const StateSet& states, std::span<const Letter> w) {
  StateSet current = states;
  for (Letter a : w) {
    if (current.empty()) break;
    StateSet next(dfa.size());
    current.for_each([&](State q) {
      State t = dfa.next(q, a);
      if (t != kUndef) next.insert(t);
    });
    current = std::move(next);
  }
  return current;
}

StateSet preimage(const PartialDfa& dfa, const StateSet& states, std::span<const Letter> w) {
  StateSet out(dfa.size());
  for (State q = 0; q < dfa.size(); ++q) {
    State t = dfa.run(q, w);
    if (t != kUndef && states.contains(t)) out.insert(q);
  }
  return out;
}

std::size_t rank(const PartialDfa& dfa, std::span<const Letter> w) {
  return image(dfa, dfa.all_states(), w).size();
}

bool is_mortal(const PartialDfa& dfa, std::span<const Letter> w) { return rank(dfa, w) == 0; }

namespace {

std::vector<bool> reachable(const std::vector<std::vector<State>>& adj, State from) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<State> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State t : adj[q]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_strongly_connected(const PartialDfa& dfa) {
  std::vector<std::vector<State>> fwd(dfa.size()), bwd(dfa.size());
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      State t = dfa.next(q, a);
      if (t == kUndef) continue;
      fwd[q].push_back(t);
      bwd[t].push_back(q);
    }
  }
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return all(reachable(fwd, 0)) && all(reachable(bwd, 0));
}

bool is_complete(const PartialDfa& dfa) {
  for (State q = 0; q < dfa.size(); ++q)
    for (Letter a = 0; a < dfa.alphabet_size(); ++a)
      if (!dfa.defined(q, a)) return false;
  return true;
}

bool is_properly_incomplete(const PartialDfa& dfa) {
  for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
    bool some_defined = false, some_undefined = false;
    for (State q = 0; q < dfa.size(); ++q) (dfa.defined(q, a) ? some_defined : some_undefined) = true;
    if (some_defined && some_undefined) return true;
  }
  return false;
}

bool is_eulerian(const PartialDfa& dfa) {
  if (!is_strongly_connected(dfa)) return false;
  std::vector<std::size_t> out(dfa.size(), 0), in(dfa.size(), 0);
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      State t = dfa.next(q, a);
      if (t == kUndef) continue;
      ++out[q];
      ++in[t];
    }
  }
  return out == in;
}

Word connecting_word(const PartialDfa& dfa, State p, State q) {
  if (!is_strongly_connected(dfa)) throw PreconditionError("connecting word requires a strongly connected automaton");
  if (p >= dfa.size() || q >= dfa.size()) throw PreconditionError("state out of range");
  std::vector<State> parent(dfa.size(), kUndef);
  std::vector<Letter> via(dfa.size(), 0);
  std::vector<bool> seen(dfa.size(), false);
  std::queue<State> queue;
  queue.push(p);
  seen[p] = true;
  while (!queue.empty() && !seen[q]) {
    State s = queue.front();
    queue.pop();
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      State t = dfa.next(s, a);
      if (t == kUndef || seen[t]) continue;
      seen[t] = true;
      parent[t] = s;
      via[t] = a;
      queue.push(t);
    }
  }
  Word w;
  for (State s = q; s != p; s = parent[s]) w.push_back(via[s]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<Letter> fully_undefined_letters(const PartialDfa& dfa) {
  std::vector<Letter> out;
  for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
    bool any = false;
    for (State q = 0; q < dfa.size() && !any; ++q) any = dfa.defined(q, a);
    if (!any) out.push_back(a);
  }
  return out;
}

Word concat(Word a, std::span<const Letter> b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace psync
