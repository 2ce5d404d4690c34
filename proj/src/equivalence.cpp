#include "psync/equivalence.hpp"

#include <algorithm>
#include <map>

#include "psync/error.hpp"

namespace psync {

namespace {

// Level-wise refinement over an arbitrary transition table where kUndef
// plays the role of the sink. ids[k][x] is the class of x under the
// length-<=k relation; the last row is stable.
std::vector<std::vector<std::size_t>> level_iteration(std::size_t n, std::size_t letters, const std::vector<State>& next) {
  std::vector<std::vector<std::size_t>> levels;
  levels.emplace_back(n, 0);
  std::size_t classes = n == 0 ? 0 : 1;
  while (true) {
    const auto& prev = levels.back();
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> cur(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> sig;
      sig.reserve(letters + 1);
      sig.push_back(prev[x]);
      for (Letter a = 0; a < letters; ++a) {
        State t = next[x * letters + a];
        sig.push_back(t == kUndef ? 0 : prev[t] + 1);
      }
      cur[x] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    if (ids.size() == classes) break;
    classes = ids.size();
    levels.push_back(std::move(cur));
  }
  return levels;
}

// Refinable partition over 0..size-1 with marking, after Valmari & Lehtinen.
class Refinable {
 public:
  explicit Refinable(std::size_t size) : elems_(size), pos_(size), block_(size, 0) {
    for (std::size_t i = 0; i < size; ++i) elems_[i] = pos_[i] = i;
    first_.push_back(0);
    end_.push_back(size);
    marked_.push_back(0);
  }

  std::size_t blocks() const { return first_.size(); }
  std::size_t block_of(std::size_t e) const { return block_[e]; }
  std::size_t block_size(std::size_t b) const { return end_[b] - first_[b]; }
  std::span<const std::size_t> block(std::size_t b) const { return {elems_.data() + first_[b], block_size(b)}; }

  void mark(std::size_t e) {
    std::size_t b = block_[e];
    std::size_t i = pos_[e];
    std::size_t j = first_[b] + marked_[b];
    if (i < j) return;
    std::swap(elems_[i], elems_[j]);
    pos_[elems_[i]] = i;
    pos_[elems_[j]] = j;
    if (marked_[b]++ == 0) touched_.push_back(b);
  }

  /// Splits every touched block into marked and unmarked parts. Calls
  /// on_split(old, fresh) where fresh holds the marked part.
  template <typename F>
  void split(F&& on_split) {
    for (std::size_t b : touched_) {
      std::size_t m = marked_[b];
      marked_[b] = 0;
      if (m == block_size(b)) continue;
      std::size_t nb = first_.size();
      first_.push_back(first_[b]);
      end_.push_back(first_[b] + m);
      marked_.push_back(0);
      first_[b] += m;
      for (std::size_t i = first_[nb]; i < end_[nb]; ++i) block_[elems_[i]] = nb;
      on_split(b, nb);
    }
    touched_.clear();
  }

  // Initial split of block 0 by a predicate.
  template <typename P>
  void split_initial(P&& in_fresh) {
    for (std::size_t e = 0; e < elems_.size(); ++e)
      if (in_fresh(e)) mark(e);
    split([](std::size_t, std::size_t) {});
  }

 private:
  std::vector<std::size_t> elems_, pos_, block_;
  std::vector<std::size_t> first_, end_, marked_;
  std::vector<std::size_t> touched_;
};

std::vector<std::size_t> hopcroft_classes(const PartialDfa& dfa) {
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.alphabet_size();
  const std::size_t sink = n;
  auto target = [&](std::size_t s, Letter a) -> std::size_t {
    if (s == sink) return sink;
    State t = dfa.next(static_cast<State>(s), a);
    return t == kUndef ? sink : t;
  };

  // inverse[a][t] lists the sources of t under a.
  std::vector<std::vector<std::vector<std::size_t>>> inverse(k, std::vector<std::vector<std::size_t>>(n + 1));
  for (std::size_t s = 0; s <= n; ++s)
    for (Letter a = 0; a < k; ++a) inverse[a][target(s, a)].push_back(s);

  Refinable part(n + 1);
  part.split_initial([&](std::size_t e) { return e == sink; });

  std::vector<std::vector<bool>> waiting(part.blocks(), std::vector<bool>(k, false));
  std::vector<std::pair<std::size_t, Letter>> work;
  auto push = [&](std::size_t b, Letter a) {
    if (b >= waiting.size()) waiting.resize(b + 1, std::vector<bool>(k, false));
    if (!waiting[b][a]) {
      waiting[b][a] = true;
      work.emplace_back(b, a);
    }
  };
  // The accepting block {sink} is never larger than its complement.
  if (part.blocks() == 2) {
    std::size_t sink_block = part.block_of(sink);
    for (Letter a = 0; a < k; ++a) push(sink_block, a);
  }

  std::vector<std::size_t> splitter;
  while (!work.empty()) {
    auto [b, a] = work.back();
    work.pop_back();
    waiting[b][a] = false;
    splitter.assign(part.block(b).begin(), part.block(b).end());
    for (std::size_t t : splitter)
      for (std::size_t s : inverse[a][t]) part.mark(s);
    part.split([&](std::size_t old, std::size_t fresh) {
      for (Letter c = 0; c < k; ++c) {
        if (old < waiting.size() && waiting[old][c]) {
          push(fresh, c);
        } else {
          push(part.block_size(fresh) <= part.block_size(old) ? fresh : old, c);
        }
      }
    });
  }

  std::vector<std::size_t> block_id(n);
  for (std::size_t q = 0; q < n; ++q) block_id[q] = part.block_of(q);
  // Renumber by smallest member.
  std::map<std::size_t, std::size_t> renumber;
  std::vector<std::size_t> class_of(n);
  for (std::size_t q = 0; q < n; ++q) class_of[q] = renumber.emplace(block_id[q], renumber.size()).first->second;
  return class_of;
}

}  // namespace

Partition::Partition(std::vector<std::size_t> class_of, const PartialDfa& dfa)
    : class_of_(std::move(class_of)), letters_(dfa.alphabet_size()) {
  if (class_of_.size() != dfa.size()) throw InvariantError("partition size mismatch");
  std::size_t count = 0;
  for (std::size_t id : class_of_) {
    if (id > count) throw InvariantError("classes not numbered by smallest member");
    if (id == count) ++count;
  }
  classes_.assign(count, StateSet(dfa.size()));
  for (State q = 0; q < dfa.size(); ++q) classes_[class_of_[q]].insert(q);

  class_next_.assign(count * letters_, kUndef);
  for (std::size_t c = 0; c < count; ++c) {
    State rep = classes_[c].front();
    for (Letter a = 0; a < letters_; ++a) {
      State t = dfa.next(rep, a);
      State ct = t == kUndef ? kUndef : static_cast<State>(class_of_[t]);
      classes_[c].for_each([&](State q) {
        State u = dfa.next(q, a);
        State cu = u == kUndef ? kUndef : static_cast<State>(class_of_[u]);
        if (cu != ct) throw InvariantError("partition is not a congruence");
      });
      class_next_[c * letters_ + a] = ct;
    }
  }

  auto levels = level_iteration(count, letters_, class_next_);
  stable_level_ = levels.size() - 1;
  if (!levels.empty() && count > 0) {
    std::size_t final_classes = *std::max_element(levels.back().begin(), levels.back().end()) + 1;
    if (final_classes != count) throw InvariantError("partition coarser than inseparability");
  }

  split_level_.assign(count * count, 0);
  split_letter_.assign(count * count, 0);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t d = 0; d < count; ++d) {
      if (c == d) continue;
      std::size_t k = 1;
      while (levels[k][c] == levels[k][d]) ++k;
      Letter witness = kUndef;
      for (Letter a = 0; a < letters_ && witness == kUndef; ++a) {
        State tc = class_next(c, a), td = class_next(d, a);
        if (k == 1) {
          if ((tc == kUndef) != (td == kUndef)) witness = a;
        } else if (tc != kUndef && td != kUndef && levels[k - 1][tc] != levels[k - 1][td]) {
          witness = a;
        }
      }
      if (witness == kUndef) throw InvariantError("missing split witness");
      split_level_[c * count + d] = k;
      split_letter_[c * count + d] = witness;
    }
  }
}

Partition inseparability_partition(const PartialDfa& dfa) { return Partition(hopcroft_classes(dfa), dfa); }

std::vector<std::vector<std::size_t>> refinement_levels(const PartialDfa& dfa) {
  std::vector<State> next(dfa.size() * dfa.alphabet_size());
  for (State q = 0; q < dfa.size(); ++q)
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) next[q * dfa.alphabet_size() + a] = dfa.next(q, a);
  return level_iteration(dfa.size(), dfa.alphabet_size(), next);
}

std::size_t kappa(const Partition& part, const StateSet& s) {
  std::vector<bool> hit(part.count(), false);
  std::size_t count = 0;
  s.for_each([&](State q) {
    auto c = part.class_of(q);
    if (!hit[c]) {
      hit[c] = true;
      ++count;
    }
  });
  return count;
}

Word separating_word([[maybe_unused]] const PartialDfa& dfa, const Partition& part, State p, State q) {
  std::size_t c = part.class_of(p), d = part.class_of(q);
  if (c == d) throw PreconditionError("states " + std::to_string(p) + " and " + std::to_string(q) + " are inseparable");
  Word w;
  while (true) {
    Letter a = part.split_letter(c, d);
    w.push_back(a);
    if (part.split_level(c, d) == 1) break;
    std::size_t nc = part.class_next(c, a), nd = part.class_next(d, a);
    c = nc;
    d = nd;
  }
  return w;
}

Word class_reducing_word(const PartialDfa& dfa, const Partition& part, const StateSet& s) {
  if (kappa(part, s) < 2) throw PreconditionError("set meets fewer than two inseparability classes");
  auto members = s.members();
  std::size_t best_level = SIZE_MAX;
  State bp = 0, bq = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      std::size_t c = part.class_of(members[i]), d = part.class_of(members[j]);
      if (c == d) continue;
      std::size_t level = part.split_level(c, d);
      if (level < best_level) {
        best_level = level;
        bp = members[i];
        bq = members[j];
      }
    }
  }
  return separating_word(dfa, part, bp, bq);
}

Word collapse_to_single_class_word(const PartialDfa& dfa, const Partition& part, const StateSet& s) {
  if (s.empty()) throw PreconditionError("cannot collapse the empty set");
  Word w;
  StateSet current = s;
  while (kappa(part, current) >= 2) {
    Word step = class_reducing_word(dfa, part, current);
    current = image(dfa, current, step);
    w.insert(w.end(), step.begin(), step.end());
  }
  return w;
}

Quotient quotient(const PartialDfa& dfa, const Partition& part) {
  PartialDfa q(part.count(), dfa.alphabet());
  for (std::size_t c = 0; c < part.count(); ++c)
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) q.set(static_cast<State>(c), a, part.class_next(c, a));
  return {std::move(q), part.class_ids()};
}

}  // namespace psync
