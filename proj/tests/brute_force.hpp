#pragma once

// Reference computations by plain word enumeration. Nothing here calls the
// library's algorithms; automata are copied into a bare table first.

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "psync/automaton.hpp"

namespace brute {

struct Table {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<long> next;  // -1 when undefined

  explicit Table(const psync::PartialDfa& dfa) : n(dfa.size()), k(dfa.alphabet_size()), next(n * k) {
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t a = 0; a < k; ++a) {
        auto t = dfa.next(static_cast<psync::State>(q), static_cast<psync::Letter>(a));
        next[q * k + a] = t == psync::kUndef ? -1 : static_cast<long>(t);
      }
  }

  long run(long q, const std::vector<std::size_t>& w) const {
    for (auto a : w) {
      if (q < 0) return -1;
      q = next[static_cast<std::size_t>(q) * k + a];
    }
    return q;
  }

  std::set<long> image(const std::set<long>& s, const std::vector<std::size_t>& w) const {
    std::set<long> out;
    for (long q : s)
      if (long t = run(q, w); t >= 0) out.insert(t);
    return out;
  }

  std::set<long> all() const {
    std::set<long> s;
    for (std::size_t q = 0; q < n; ++q) s.insert(static_cast<long>(q));
    return s;
  }
};

/// Calls f on every word of length 0..max_len in shortlex order until f
/// returns true. Returns whether it was stopped.
inline bool for_each_word(std::size_t k, std::size_t max_len, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::size_t> w(len, 0);
    while (true) {
      if (f(w)) return true;
      std::size_t i = len;
      while (i > 0 && w[i - 1] == k - 1) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  return false;
}

inline psync::Word to_word(const std::vector<std::size_t>& w) { return psync::Word(w.begin(), w.end()); }

/// Shortest word (shortlex least) whose image of Q has exactly r states.
inline std::optional<psync::Word> shortest_of_rank(const psync::PartialDfa& dfa, std::size_t r, std::size_t max_len) {
  const Table t(dfa);
  std::optional<psync::Word> found;
  for_each_word(t.k, max_len, [&](const auto& w) {
    if (t.image(t.all(), w).size() != r) return false;
    found = to_word(w);
    return true;
  });
  return found;
}

inline std::size_t min_nonzero_rank(const psync::PartialDfa& dfa, std::size_t max_len) {
  const Table t(dfa);
  std::size_t best = t.n;
  for_each_word(t.k, max_len, [&](const auto& w) {
    auto s = t.image(t.all(), w).size();
    if (s > 0 && s < best) best = s;
    return best == 1;
  });
  return best;
}

/// Two states are inseparable when every word up to length n is defined on
/// both or on neither.
inline bool inseparable(const psync::PartialDfa& dfa, long p, long q) {
  const Table t(dfa);
  return !for_each_word(t.k, t.n, [&](const auto& w) { return (t.run(p, w) >= 0) != (t.run(q, w) >= 0); });
}

inline std::size_t shortest_separating_length(const psync::PartialDfa& dfa, long p, long q) {
  const Table t(dfa);
  std::size_t len = 0;
  for_each_word(t.k, t.n, [&](const auto& w) {
    len = w.size();
    return (t.run(p, w) >= 0) != (t.run(q, w) >= 0);
  });
  return len;
}

inline bool strongly_connected(const psync::PartialDfa& dfa) {
  const Table t(dfa);
  std::vector<std::vector<bool>> reach(t.n, std::vector<bool>(t.n, false));
  for (std::size_t q = 0; q < t.n; ++q) {
    reach[q][q] = true;
    for (std::size_t a = 0; a < t.k; ++a)
      if (long s = t.next[q * t.k + a]; s >= 0) reach[q][static_cast<std::size_t>(s)] = true;
  }
  for (std::size_t m = 0; m < t.n; ++m)
    for (std::size_t i = 0; i < t.n; ++i)
      for (std::size_t j = 0; j < t.n; ++j)
        if (reach[i][m] && reach[m][j]) reach[i][j] = true;
  for (auto& row : reach)
    for (bool b : row)
      if (!b) return false;
  return true;
}

}  // namespace brute
