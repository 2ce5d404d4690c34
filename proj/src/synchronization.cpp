#include "psync/synchronization.hpp"

#include <deque>

#include "psync/error.hpp"
#include "psync/oracle.hpp"

namespace psync {

namespace {

void require_strongly_connected(const PartialDfa& dfa, const char* what) {
  if (!is_strongly_connected(dfa)) {
    throw PreconditionError(std::string(what) + " requires a strongly connected automaton (the general problem is PSPACE-complete)");
  }
}

bool compresses(State tp, State tq) { return (tp == tq && tp != kUndef) || ((tp == kUndef) != (tq == kUndef)); }

}  // namespace

PairTable::PairTable(const PartialDfa& dfa)
    : n_(dfa.size()), dist_(n_ * n_, kInfinite), letter_(n_ * n_, 0) {
  const std::size_t k = dfa.alphabet_size();
  std::vector<std::vector<std::vector<State>>> inverse(k, std::vector<std::vector<State>>(n_));
  for (State q = 0; q < n_; ++q)
    for (Letter a = 0; a < k; ++a)
      if (State t = dfa.next(q, a); t != kUndef) inverse[a][t].push_back(q);

  std::deque<std::pair<State, State>> queue;
  for (State p = 0; p < n_; ++p) {
    for (State q = p + 1; q < n_; ++q) {
      for (Letter a = 0; a < k; ++a) {
        if (compresses(dfa.next(p, a), dfa.next(q, a))) {
          dist_[index(p, q)] = 1;
          letter_[index(p, q)] = a;
          queue.emplace_back(p, q);
          break;
        }
      }
    }
  }
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    const std::size_t d = dist_[index(p, q)];
    for (Letter a = 0; a < k; ++a) {
      for (State s : inverse[a][p]) {
        for (State t : inverse[a][q]) {
          if (s == t || dist_[index(s, t)] != kInfinite) continue;
          dist_[index(s, t)] = d + 1;
          letter_[index(s, t)] = a;
          queue.emplace_back(std::min(s, t), std::max(s, t));
        }
      }
    }
  }
}

Word PairTable::compressing_word(const PartialDfa& dfa, State p, State q) const {
  Word w;
  if (!compressible(p, q)) return w;
  while (true) {
    Letter a = first_letter(p, q);
    w.push_back(a);
    State tp = dfa.next(p, a), tq = dfa.next(q, a);
    if (compresses(tp, tq)) break;
    if (tp == kUndef || tq == kUndef || tp == tq || distance(tp, tq) + 1 != distance(p, q)) throw InvariantError("pair table walk left the shortest path");
    p = tp;
    q = tq;
  }
  return w;
}

std::optional<std::pair<State, State>> PairTable::incompressible_pair() const {
  for (State p = 0; p < n_; ++p)
    for (State q = p + 1; q < n_; ++q)
      if (!compressible(p, q)) return std::make_pair(p, q);
  return std::nullopt;
}

PairTable pair_table(const PartialDfa& dfa) { return PairTable(dfa); }

bool is_synchronizing(const PartialDfa& dfa) {
  require_strongly_connected(dfa, "synchronizability check");
  return !pair_table(dfa).incompressible_pair();
}

bool replay_matches(const PartialDfa& dfa, const SyncResult& result) {
  StateSet current = dfa.all_states();
  Word joined;
  for (const auto& step : result.trace) {
    current = image(dfa, current, step.subword);
    if (current.size() != step.subset_size) return false;
    joined.insert(joined.end(), step.subword.begin(), step.subword.end());
  }
  return joined == result.word && current.size() == result.final_rank;
}

SyncResult greedy_compress(const PartialDfa& dfa, const PairTable& table, const StateSet& start) {
  SyncResult result;
  StateSet current = start;
  while (true) {
    auto members = current.members();
    std::size_t best = PairTable::kInfinite;
    State bp = 0, bq = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        std::size_t d = table.distance(members[i], members[j]);
        if (d < best) {
          best = d;
          bp = members[i];
          bq = members[j];
        }
      }
    }
    if (best == PairTable::kInfinite) break;
    Word w = table.compressing_word(dfa, bp, bq);
    StateSet next = image(dfa, current, w);
    if (next.empty() || next.size() >= current.size()) throw InvariantError("compressing word failed to compress");
    current = std::move(next);
    result.word.insert(result.word.end(), w.begin(), w.end());
    result.trace.push_back({current.size(), std::move(w)});
  }
  result.final_rank = current.size();
  return result;
}

SyncResult greedy_min_rank(const PartialDfa& dfa) {
  require_strongly_connected(dfa, "minimum-rank search");
  return greedy_compress(dfa, pair_table(dfa), dfa.all_states());
}

SyncResult min_rank_word_via_fixing(const PartialDfa& dfa) {
  require_strongly_connected(dfa, "minimum-rank search");
  const SyncResult complete = greedy_min_rank(fixing(dfa));
  SyncResult result;
  result.word = lift_word_to_partial(dfa, dfa.all_states(), complete.word);
  StateSet current = image(dfa, dfa.all_states(), result.word);
  result.trace.push_back({current.size(), result.word});

  const Partition part = inseparability_partition(dfa);
  const PairTable table = pair_table(dfa);
  while (true) {
    Word step;
    if (kappa(part, current) >= 2) {
      step = class_reducing_word(dfa, part, current);
    } else {
      auto members = current.members();
      std::size_t best = PairTable::kInfinite;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          if (table.distance(members[i], members[j]) < best) {
            best = table.distance(members[i], members[j]);
            step = table.compressing_word(dfa, members[i], members[j]);
          }
        }
      }
      if (best == PairTable::kInfinite) break;
    }
    current = image(dfa, current, step);
    if (current.empty()) throw InvariantError("rank reduction produced a mortal word");
    result.word.insert(result.word.end(), step.begin(), step.end());
    result.trace.push_back({current.size(), std::move(step)});
  }
  result.final_rank = current.size();
  return result;
}

Reduction reduction_to_complete(const PartialDfa& dfa) {
  require_strongly_connected(dfa, "reduction to a complete automaton");
  Partition part = inseparability_partition(dfa);
  std::size_t root = 0;
  for (std::size_t c = 1; c < part.count(); ++c)
    if (part.members(c).size() < part.members(root).size()) root = c;
  CollectingTree tree = collecting_tree(dfa, part, root);
  PartialDfa automaton = collecting(dfa, tree);
  return {std::move(automaton), std::move(tree)};
}

Word ResetPipeline::word() const { return concat(concat(collapse, route), finish); }

ResetPipeline reset_pipeline_via_collecting(const PartialDfa& dfa) {
  require_strongly_connected(dfa, "reset word construction");
  const PairTable table = pair_table(dfa);
  if (auto pair = table.incompressible_pair()) {
    throw NotSynchronizingError("not synchronizing: pair {" + std::to_string(pair->first) + ", " + std::to_string(pair->second) + "} is incompressible");
  }
  Reduction red = reduction_to_complete(dfa);
  const Partition& part = red.tree.partition;

  ResetPipeline out;
  out.collapse = collapse_to_single_class_word(dfa, part, dfa.all_states());
  const std::size_t landing = part.class_of(image(dfa, dfa.all_states(), out.collapse).front());
  const Quotient q = quotient(dfa, part);
  out.route = connecting_word(q.dfa, static_cast<State>(landing), static_cast<State>(red.tree.root_class));

  const SyncResult complete = greedy_min_rank(red.automaton);
  if (complete.final_rank != 1) throw InvariantError("collecting automaton of a synchronizing automaton is not synchronizing");
  out.finish = strip_gamma(dfa, red.tree, complete.word);

  if (rank(dfa, out.word()) != 1) throw InvariantError("assembled word is not a reset word");
  return out;
}

Word reset_word_via_collecting(const PartialDfa& dfa) { return reset_pipeline_via_collecting(dfa).word(); }

Word rank_target_word(const PartialDfa& dfa, std::size_t target, RankSearch mode) {
  require_strongly_connected(dfa, "rank search");
  if (target == 0) throw PreconditionError("target rank must be positive");
  if (target >= dfa.size()) return {};

  if (mode == RankSearch::oracle) {
    const OracleReport report = subset_bfs(dfa);
    const OracleReport::Entry* best = nullptr;
    for (std::size_t r = 1; r <= target; ++r) {
      const auto& e = report.at(r);
      if (!e.reachable) continue;
      if (!best || e.length < best->length || (e.length == best->length && e.witness < best->witness)) best = &e;
    }
    if (!best) throw PreconditionError("minimal non-zero rank " + std::to_string(report.min_nonzero_rank()) + " exceeds target " + std::to_string(target));
    return best->witness;
  }

  const SyncResult greedy = greedy_min_rank(dfa);
  if (greedy.final_rank > target) throw PreconditionError("minimal non-zero rank " + std::to_string(greedy.final_rank) + " exceeds target " + std::to_string(target));
  Word w;
  for (const auto& step : greedy.trace) {
    w.insert(w.end(), step.subword.begin(), step.subword.end());
    if (step.subset_size <= target) break;
  }
  return w;
}

}  // namespace psync
