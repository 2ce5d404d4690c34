#include "psync/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <thread>

#include "psync/constructions.hpp"
#include "psync/error.hpp"
#include "psync/random.hpp"
#include "psync/synchronization.hpp"

namespace psync {

namespace {

using Mask = std::uint32_t;
constexpr Mask kNoParent = 0xFFFFFFFFu;

// Image of a subset under one letter, looked up one byte of the mask at a time.
class MaskAction {
 public:
  MaskAction(std::size_t n, std::size_t letters, const std::vector<State>& next)
      : chunks_((n + 7) / 8), table_(letters * chunks_ * 256, 0) {
    for (std::size_t a = 0; a < letters; ++a) {
      for (std::size_t c = 0; c < chunks_; ++c) {
        for (std::size_t byte = 0; byte < 256; ++byte) {
          Mask out = 0;
          for (std::size_t bit = 0; bit < 8; ++bit) {
            std::size_t q = c * 8 + bit;
            if (!(byte >> bit & 1) || q >= n) continue;
            State t = next[q * letters + a];
            if (t != kUndef) out |= Mask{1} << t;
          }
          table_[(a * chunks_ + c) * 256 + byte] = out;
        }
      }
    }
  }

  Mask apply(Mask s, std::size_t a) const {
    Mask out = 0;
    const Mask* row = &table_[a * chunks_ * 256];
    for (std::size_t c = 0; c < chunks_; ++c, s >>= 8, row += 256) out |= row[s & 0xFF];
    return out;
  }

 private:
  std::size_t chunks_;
  std::vector<Mask> table_;
};

std::vector<State> flat_table(const PartialDfa& dfa) {
  std::vector<State> next(dfa.size() * dfa.alphabet_size());
  for (State q = 0; q < dfa.size(); ++q)
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) next[q * dfa.alphabet_size() + a] = dfa.next(q, a);
  return next;
}

}  // namespace

std::optional<std::size_t> OracleReport::reset_threshold() const { return threshold(1); }

std::optional<std::size_t> OracleReport::threshold(std::size_t r) const {
  if (r >= entries.size() || !entries[r].reachable) return std::nullopt;
  return entries[r].length;
}

std::size_t OracleReport::min_nonzero_rank() const {
  for (std::size_t r = 1; r < entries.size(); ++r)
    if (entries[r].reachable) return r;
  return 0;
}

OracleReport subset_bfs(const PartialDfa& dfa) {
  const std::size_t n = dfa.size();
  if (n > kOracleMaxStates) throw LimitError("oracle limited to " + std::to_string(kOracleMaxStates) + " states, got " + std::to_string(n));
  const std::size_t letters = dfa.alphabet_size();
  const MaskAction act(n, letters, flat_table(dfa));
  const Mask full = (Mask{1} << n) - 1;

  std::vector<Mask> parent(std::size_t{1} << n, kNoParent);
  std::vector<Mask> queue;
  queue.push_back(full);
  parent[full] = full;

  OracleReport report;
  report.entries.resize(n + 1);
  std::vector<Mask> first_of_rank(n + 1, kNoParent);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mask s = queue[head];
    const auto r = static_cast<std::size_t>(std::popcount(s));
    if (first_of_rank[r] == kNoParent) first_of_rank[r] = s;
    for (std::size_t a = 0; a < letters; ++a) {
      Mask t = act.apply(s, a);
      if (parent[t] != kNoParent) continue;
      parent[t] = s;
      queue.push_back(t);
    }
  }

  for (std::size_t r = 0; r <= n; ++r) {
    if (first_of_rank[r] == kNoParent) continue;
    auto& e = report.entries[r];
    e.reachable = true;
    for (Mask s = first_of_rank[r]; s != full;) {
      Mask p = parent[s];
      std::size_t a = 0;
      while (act.apply(p, a) != s) ++a;
      e.witness.push_back(static_cast<Letter>(a));
      s = p;
    }
    std::reverse(e.witness.begin(), e.witness.end());
    e.length = e.witness.size();
  }
  return report;
}

DuplicatingReport duplicating_identity_check(const PartialDfa& dfa) {
  if (!is_complete(dfa)) throw PreconditionError("duplicating identity needs a complete automaton");
  if (!is_strongly_connected(dfa)) throw PreconditionError("duplicating identity needs a strongly connected automaton");
  const PartialDfa doubled = duplicating(dfa);
  const OracleReport base = subset_bfs(dfa);
  const OracleReport dup = subset_bfs(doubled);
  const Letter gamma = static_cast<Letter>(dfa.alphabet_size());

  DuplicatingReport report;
  for (std::size_t r = 1; r < dfa.size(); ++r) {
    DuplicatingRow row{r, base.threshold(r), dup.threshold(r), false};
    if (row.base_threshold) {
      Word shaped;
      for (Letter a : base.at(r).witness) {
        shaped.push_back(gamma);
        shaped.push_back(a);
      }
      row.shape_ok = rank(doubled, shaped) == r && shaped.size() == 2 * *row.base_threshold;
      if (row.doubled_threshold != 2 * *row.base_threshold || !row.shape_ok) report.holds = false;
    } else if (row.doubled_threshold) {
      report.holds = false;
    }
    report.rows.push_back(row);
  }
  return report;
}

namespace {

struct Candidate {
  std::size_t threshold = 0;
  std::uint64_t index = 0;
  std::vector<State> table;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.threshold != b.threshold ? a.threshold > b.threshold : a.index < b.index;
}

bool strongly_connected_table(std::size_t n, const std::vector<State>& next) {
  // Forward and backward reachability from state 0 over a binary table.
  std::array<bool, 32> fwd{}, bwd{};
  std::array<State, 32> stack{};
  auto sweep = [&](std::array<bool, 32>& seen, bool forward) {
    std::size_t top = 0;
    stack[top++] = 0;
    seen[0] = true;
    while (top) {
      State q = stack[--top];
      for (State s = 0; s < n; ++s) {
        for (std::size_t a = 0; a < 2; ++a) {
          State from = forward ? q : s, to = forward ? s : q;
          if (next[from * 2 + a] != to || seen[s]) continue;
          seen[s] = true;
          stack[top++] = s;
        }
      }
    }
    for (std::size_t s = 0; s < n; ++s)
      if (!seen[s]) return false;
    return true;
  };
  return sweep(fwd, true) && sweep(bwd, false);
}

struct Tally {
  Candidate best;
  std::size_t candidates = 0;
  std::size_t qualifying = 0;
};

Mask apply_binary(std::size_t n, const std::vector<State>& table, Mask s, std::size_t a) {
  Mask out = 0;
  for (std::size_t q = 0; q < n; ++q)
    if ((s >> q & 1) && table[q * 2 + a] != kUndef) out |= Mask{1} << table[q * 2 + a];
  return out;
}

// Length of a shortest word mapping the full set to a singleton, or 0 when
// there is none.
std::size_t reset_length(std::size_t n, const std::vector<State>& table, std::vector<std::uint8_t>& seen, std::vector<Mask>& queue) {
  const Mask full = (Mask{1} << n) - 1;
  std::fill(seen.begin(), seen.end(), 0);
  queue.clear();
  queue.push_back(full);
  seen[full] = 1;
  std::size_t head = 0, depth = 0;
  while (head < queue.size()) {
    std::size_t level_end = queue.size();
    ++depth;
    for (; head < level_end; ++head) {
      for (std::size_t a = 0; a < 2; ++a) {
        Mask t = apply_binary(n, table, queue[head], a);
        if (seen[t]) continue;
        if (std::has_single_bit(t)) return depth;
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }
  return 0;
}

void evaluate(std::size_t n, std::uint64_t index, const std::vector<State>& table, Tally& tally, std::vector<std::uint8_t>& seen, std::vector<Mask>& queue) {
  ++tally.candidates;
  if (!strongly_connected_table(n, table)) return;
  std::size_t len = reset_length(n, table, seen, queue);
  if (len == 0) return;
  ++tally.qualifying;
  Candidate c{len, index, table};
  if (tally.best.table.empty() || better(c, tally.best)) tally.best = std::move(c);
}

PartialDfa to_dfa(std::size_t n, const std::vector<State>& table) {
  PartialDfa dfa(n, {"a", "b"});
  for (State q = 0; q < n; ++q)
    for (Letter a = 0; a < 2; ++a) dfa.set(q, a, table[q * 2 + a]);
  return dfa;
}

}  // namespace

ExtremalResult extremal_search(std::size_t n, const ExtremalProfile& profile) {
  if (n == 0) throw PreconditionError("state count must be positive");
  ExtremalResult result;
  result.n = n;
  result.target = (n * n - n) / 2;
  if (n == 1) return result;  // a single state cannot be properly incomplete
  if (n > kOracleMaxStates) throw LimitError("extremal search limited to " + std::to_string(kOracleMaxStates) + " states");

  Tally total;
  if (profile.exhaustive) {
    if (n > 6) throw LimitError("exhaustive extremal search limited to n <= 6");
    // State 0 carries the undefined transitions: its two entries range over
    // n + 1 values (value n encodes undefined) with at least one undefined;
    // the other 2(n - 1) entries range over n values.
    std::uint64_t others = 1;
    for (std::size_t i = 0; i < 2 * (n - 1); ++i) others *= n;
    std::vector<std::pair<State, State>> heads;
    for (State x = 0; x <= n; ++x)
      for (State y = 0; y <= n; ++y)
        if (x == n || y == n) heads.emplace_back(x == n ? kUndef : x, y == n ? kUndef : y);

    const std::uint64_t total_count = heads.size() * others;
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n >= 5 ? 32 : 1));
    std::vector<Tally> tallies(workers);
    auto work = [&](std::size_t w) {
      std::vector<std::uint8_t> seen(std::size_t{1} << n);
      std::vector<Mask> queue;
      std::vector<State> table(2 * n);
      for (std::uint64_t idx = w; idx < total_count; idx += workers) {
        const auto& head = heads[idx / others];
        table[0] = head.first;
        table[1] = head.second;
        std::uint64_t rest = idx % others;
        for (std::size_t i = 2; i < 2 * n; ++i) {
          table[i] = static_cast<State>(rest % n);
          rest /= n;
        }
        evaluate(n, idx, table, tallies[w], seen, queue);
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(work, w);
    work(0);
    for (auto& t : threads) t.join();
    for (auto& t : tallies) {
      total.candidates += t.candidates;
      total.qualifying += t.qualifying;
      if (!t.best.table.empty() && (total.best.table.empty() || better(t.best, total.best))) total.best = t.best;
    }
  } else {
    Rng rng(profile.seed);
    std::vector<std::uint8_t> seen(std::size_t{1} << n);
    std::vector<Mask> queue;
    for (std::size_t trial = 0; trial < profile.trials; ++trial) {
      std::vector<State> table(2 * n);
      const State deficient = rng.below(static_cast<std::uint32_t>(n));
      for (State q = 0; q < n; ++q) {
        for (std::size_t a = 0; a < 2; ++a) table[q * 2 + a] = rng.below(static_cast<std::uint32_t>(n));
      }
      // At least one of the deficient state's transitions is undefined.
      switch (rng.below(3)) {
        case 0: table[deficient * 2] = kUndef; break;
        case 1: table[deficient * 2 + 1] = kUndef; break;
        default: table[deficient * 2] = table[deficient * 2 + 1] = kUndef; break;
      }
      evaluate(n, trial, table, total, seen, queue);
    }
  }

  result.candidates = total.candidates;
  result.qualifying = total.qualifying;
  if (!total.best.table.empty()) {
    result.best = to_dfa(n, total.best.table);
    result.best_threshold = total.best.threshold;
  }
  return result;
}

}  // namespace psync
