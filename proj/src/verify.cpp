#include "psync/verify.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>

#include "psync/codes.hpp"
#include "psync/constructions.hpp"
#include "psync/equivalence.hpp"
#include "psync/error.hpp"
#include "psync/generators.hpp"
#include "psync/io.hpp"
#include "psync/oracle.hpp"
#include "psync/random.hpp"
#include "psync/synchronization.hpp"

namespace psync {

namespace {

constexpr const char* kSixStateExample = R"(dfa v1
states 6
alphabet a b
0 a 1
1 a 2
2 a 3
3 a 4
4 a 5
5 a 0
0 b 0
1 b 1
3 b 0
4 b 4
)";

// Collects failures and stops recording after the first few.
class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 5) out_ << (count_ > 1 ? "; " : "") << what;
  }
  bool empty() const { return count_ == 0; }
  CheckOutcome outcome(const std::string& summary) const {
    if (count_ == 0) return {true, summary};
    std::ostringstream s;
    s << count_ << " violation(s): " << out_.str();
    return {false, s.str()};
  }

 private:
  std::size_t count_ = 0;
  std::ostringstream out_;
};

std::string show(const PartialDfa& dfa, const Word& w) { return format_word(dfa, w); }

CheckOutcome six_state_check(const CheckConfig&) {
  Failures f;
  const PartialDfa dfa = six_state_example();
  if (!is_synchronizing(dfa)) f.add("not reported synchronizing");
  const OracleReport report = subset_bfs(dfa);
  if (report.reset_threshold() != std::optional<std::size_t>(3)) f.add("reset threshold differs from 3");
  const Word bab = parse_word(dfa, "b a b");
  if (report.at(1).witness != bab) f.add("witness " + show(dfa, report.at(1).witness) + " differs from b a b");
  if (preimage(dfa, StateSet::of(6, {1}), bab) != StateSet::of(6, {0, 3})) f.add("preimage of {1} under bab is not {0, 3}");
  const Partition part = inseparability_partition(dfa);
  const std::vector<StateSet> expected{StateSet::of(6, {0, 3}), StateSet::of(6, {1, 4}), StateSet::of(6, {2, 5})};
  std::vector<StateSet> got;
  for (std::size_t c = 0; c < part.count(); ++c) got.push_back(part.members(c));
  if (got != expected) f.add("classes differ from {0,3} {1,4} {2,5}");
  return f.outcome("rt=3 witness b a b, classes {0,3} {1,4} {2,5}");
}

CheckOutcome oneword_family_check(const CheckConfig&) {
  Failures f;
  for (std::size_t k = 1; k <= 6; ++k) {
    const PrefixCode code = gen_oneword_code(k);
    const LiteralAutomaton lit = literal_automaton(code);
    const std::string tag = "k=" + std::to_string(k) + ": ";
    if (one_word_rank(code) != 1) f.add(tag + "rank is not 1");
    const auto rt = subset_bfs(lit.dfa).reset_threshold();
    if (rt != k + 1) f.add(tag + "oracle reset threshold " + (rt ? std::to_string(*rt) : "none"));
    const Word w = literal_reset_word(lit, code);
    if (w.size() != k + 1 || rank(lit.dfa, w) != 1) f.add(tag + "reset word " + show(lit.dfa, w));
  }
  return f.outcome("k=1..6: rank 1, rt=k+1, reset word length k+1");
}

CheckOutcome power_code_check(const CheckConfig&) {
  Failures f;
  for (std::size_t k = 2; k <= 3; ++k) {
    std::string x;
    for (std::size_t i = 0; i < k; ++i) x += "ab";
    const PrefixCode code = validate_code({x});
    const LiteralAutomaton lit = literal_automaton(code);
    const std::size_t oracle = subset_bfs(lit.dfa).min_nonzero_rank();
    const std::size_t formula = one_word_rank(code);
    if (oracle != k || formula != k) f.add(x + ": oracle " + std::to_string(oracle) + ", formula " + std::to_string(formula));
  }
  return f.outcome("(ab)^2 and (ab)^3 have minimal rank 2 and 3");
}

CheckOutcome duplicating_check(const CheckConfig& config) {
  Failures f;
  std::size_t tested = 0;
  const std::size_t top = std::min<std::size_t>(6, config.size_cap);
  for (std::size_t n = 3; n <= top; ++n) {
    if (!duplicating_identity_check(gen_cerny(n)).holds) f.add("C_" + std::to_string(n));
    ++tested;
  }
  Rng rng(config.seed ^ 0xD0B1);
  for (std::size_t i = 0; i < 50; ++i) {
    const std::size_t n = 2 + rng.below(static_cast<std::uint32_t>(std::max<std::size_t>(top, 2) - 1));
    const std::uint64_t seed = rng.next32();
    if (!duplicating_identity_check(gen_random_partial(n, 2, 1.0, seed)).holds) f.add("random n=" + std::to_string(n) + " seed=" + std::to_string(seed));
    ++tested;
  }
  return f.outcome(std::to_string(tested) + " automata, identity holds for every achievable rank");
}

CheckOutcome cerny_check(const CheckConfig& config) {
  Failures f;
  const std::size_t top = std::min<std::size_t>(8, config.size_cap);
  for (std::size_t n = 3; n <= top; ++n) {
    const auto rt = subset_bfs(gen_cerny(n)).reset_threshold();
    if (rt != (n - 1) * (n - 1)) f.add("C_" + std::to_string(n) + ": " + (rt ? std::to_string(*rt) : "none"));
  }
  return f.outcome("rt(C_n) = (n-1)^2 for n=3.." + std::to_string(top));
}

CheckOutcome reduction_check(const CheckConfig& config) {
  Failures f;
  std::size_t positive = 0;
  const auto corpus = random_partial_corpus(500, config.size_cap, config.seed);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const PartialDfa& dfa = corpus[i];
    const bool direct = is_synchronizing(dfa);
    const bool reduced = is_synchronizing(reduction_to_complete(dfa).automaton);
    const bool oracle = subset_bfs(dfa).synchronizing();
    if (direct != reduced || direct != oracle) f.add("instance " + std::to_string(i));
    positive += oracle;
  }
  return f.outcome(std::to_string(corpus.size()) + " automata agree (" + std::to_string(positive) + " synchronizing)");
}

CheckOutcome greedy_rank_check(const CheckConfig& config) {
  Failures f;
  const auto corpus = random_partial_corpus(500, config.size_cap, config.seed);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const PartialDfa& dfa = corpus[i];
    const std::size_t best = subset_bfs(dfa).min_nonzero_rank();
    const SyncResult greedy = greedy_min_rank(dfa);
    if (greedy.final_rank != best) f.add("instance " + std::to_string(i) + ": greedy rank " + std::to_string(greedy.final_rank) + " vs " + std::to_string(best));
    if (!replay_matches(dfa, greedy) || rank(dfa, greedy.word) != greedy.final_rank) f.add("instance " + std::to_string(i) + ": greedy word does not replay");
    const SyncResult fixing_route = min_rank_word_via_fixing(dfa);
    if (fixing_route.final_rank != best || rank(dfa, fixing_route.word) != best || !replay_matches(dfa, fixing_route)) {
      f.add("instance " + std::to_string(i) + ": fixing route rank " + std::to_string(fixing_route.final_rank));
    }
  }
  return f.outcome(std::to_string(corpus.size()) + " automata reach the minimal non-zero rank");
}

StateSet random_subset(std::size_t n, Rng& rng) {
  StateSet s(n);
  while (s.empty())
    for (State q = 0; q < n; ++q)
      if (rng.below(2)) s.insert(q);
  return s;
}

CheckOutcome lemma_check(const CheckConfig& config) {
  Failures f;
  std::size_t reductions = 0, lifts = 0;
  const auto corpus = random_partial_corpus(500, config.size_cap, config.seed);
  Rng rng(config.seed ^ 0x1E44A);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const PartialDfa& dfa = corpus[i];
    const std::size_t n = dfa.size();
    const Partition part = inseparability_partition(dfa);
    const std::size_t kq = part.count();
    const std::string tag = "instance " + std::to_string(i) + ": ";
    for (std::size_t sample = 0; sample < 100 && kq >= 2; ++sample) {
      StateSet s = random_subset(n, rng);
      while (kappa(part, s) < 2) s = random_subset(n, rng);
      const std::size_t ks = kappa(part, s);
      const Word w = class_reducing_word(dfa, part, s);
      const std::size_t after = kappa(part, image(dfa, s, w));
      if (after < 1 || after >= ks) f.add(tag + "class count " + std::to_string(ks) + " -> " + std::to_string(after));
      if (w.size() > std::min(kq - ks + 1, n - s.size() + 1)) f.add(tag + "class-reducing word too long");
      ++reductions;
    }
    const PartialDfa complete = fixing(dfa);
    for (std::size_t sample = 0; sample < 100; ++sample) {
      const StateSet s = random_subset(n, rng);
      Word w(rng.below(static_cast<std::uint32_t>(2 * n + 1)));
      for (auto& a : w) a = rng.below(static_cast<std::uint32_t>(dfa.alphabet_size()));
      const Word lifted = lift_word_to_partial(dfa, s, w);
      const StateSet got = image(dfa, s, lifted);
      if (got.empty() || !got.is_subset_of(image(complete, s, w)) || lifted.size() > w.size()) f.add(tag + "lift of " + show(dfa, w));
      ++lifts;
    }
  }
  return f.outcome(std::to_string(reductions) + " class reductions, " + std::to_string(lifts) + " lifts");
}

CheckOutcome log_rank_check(const CheckConfig& config) {
  Failures f;
  Rng rng(config.seed ^ 0x10C4);
  std::size_t retried = 0, tested = 0;
  while (tested < 200) {
    const std::size_t count = 2 + rng.below(7);
    const std::size_t maxlen = 2 + rng.below(9);
    const std::size_t alpha = 2 + rng.below(3);
    const std::uint64_t seed = rng.next32();
    PrefixCode code;
    try {
      code = gen_random_prefix_code(count, maxlen, alpha, seed);
    } catch (const LimitError&) {
      continue;
    }
    if (code.total_length() > 60) continue;
    ++tested;
    const LiteralAutomaton lit = literal_automaton(code);
    const LogRankBounds bounds = log_rank_bounds(lit);
    std::string tag = "code";
    for (const auto& x : code.words) tag += " " + code.text(x);
    try {
      const LogRankResult found = log_rank_search(lit);
      const Word w = found.word();
      const std::size_t k = rank(lit.dfa, w);
      if (k == 0) f.add(tag + ": mortal");
      if (w.size() > bounds.max_length) f.add(tag + ": length " + std::to_string(w.size()));
      if (k > bounds.max_rank) f.add(tag + ": rank " + std::to_string(k));
      if (found.attempts > 1) ++retried;
    } catch (const InvariantError& e) {
      f.add(tag + ": " + e.what());
    }
  }
  return f.outcome(std::to_string(tested) + " codes within bounds (" + std::to_string(retried) + " needed a later candidate)");
}

CheckOutcome extremal_check(const CheckConfig& config) {
  Failures f;
  std::ostringstream summary;
  const std::size_t top = std::min<std::size_t>(4, config.size_cap);
  for (std::size_t n = 2; n <= top; ++n) {
    const ExtremalResult r = extremal_search(n, {});
    summary << (n > 2 ? ", " : "") << "n=" << n << " max rt " << r.best_threshold << " target " << r.target;
    if (!r.attained()) f.add("n=" + std::to_string(n) + ": max " + std::to_string(r.best_threshold) + " < " + std::to_string(r.target));
  }
  return f.outcome(summary.str());
}

}  // namespace

PartialDfa six_state_example() { return parse_dfa(kSixStateExample); }

std::vector<PartialDfa> random_partial_corpus(std::size_t count, std::size_t size_cap, std::uint64_t seed) {
  const std::size_t top = std::clamp<std::size_t>(size_cap, 2, 8);
  Rng rng(seed);
  std::vector<PartialDfa> out;
  while (out.size() < count) {
    const std::size_t n = 2 + rng.below(static_cast<std::uint32_t>(top - 1));
    const double density = 0.6 + 0.35 * rng.unit();
    const std::uint64_t instance_seed = rng.next32();
    try {
      out.push_back(gen_random_partial(n, 2, density, instance_seed));
    } catch (const LimitError&) {
    }
  }
  return out;
}

std::vector<Check> acceptance_checks() {
  return {
      {"ac01", "six-state example: synchronizing, rt=3 via bab, preimage, classes", 1, six_state_check},
      {"ac02", "one-word family a^k b a^(k+1) b, k=1..6", 5, oneword_family_check},
      {"ac03", "power codes (ab)^k have minimal rank k", 5, power_code_check},
      {"ac04", "duplicating doubles every rank threshold", 60, duplicating_check},
      {"ac05", "Cerny family reset thresholds", 120, cerny_check},
      {"ac06", "reduction to a complete automaton preserves synchronizability", 120, reduction_check},
      {"ac07", "greedy pair compression reaches the minimal non-zero rank", 120, greedy_rank_check},
      {"ac08", "class-reducing and lifted words meet their bounds", 120, lemma_check},
      {"ac09", "log-rank words of random prefix codes", 120, log_rank_check},
      {"ac10", "extremal thresholds with one deficient state", 300, extremal_check},
  };
}

std::vector<CheckReport> run_checks(const std::vector<Check>& checks, const CheckConfig& config, bool concurrent) {
  auto run_one = [&config](const Check& check) {
    CheckReport report{check.name, check.description, {}, 0, check.time_limit};
    const auto start = std::chrono::steady_clock::now();
    try {
      report.outcome = check.run(config);
    } catch (const std::exception& e) {
      report.outcome = {false, std::string("exception: ") + e.what()};
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };
  std::vector<CheckReport> reports;
  if (concurrent) {
    std::vector<std::future<CheckReport>> pending;
    for (const auto& check : checks) pending.push_back(std::async(std::launch::async, run_one, std::cref(check)));
    for (auto& p : pending) reports.push_back(p.get());
  } else {
    for (const auto& check : checks) reports.push_back(run_one(check));
  }
  std::sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return reports;
}

}  // namespace psync
