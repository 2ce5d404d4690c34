#include "psync/generators.hpp"

#include <algorithm>

#include "psync/error.hpp"
#include "psync/random.hpp"

namespace psync {

namespace {

constexpr std::size_t kClashLimit = 200;

}  // namespace

PartialDfa gen_cerny(std::size_t n) {
  if (n == 0) throw PreconditionError("n must be positive");
  PartialDfa dfa(n, {"a", "b"});
  for (State q = 0; q < n; ++q) {
    dfa.set(q, 0, static_cast<State>((q + 1) % n));
    dfa.set(q, 1, q);
  }
  if (n > 1) dfa.set(0, 1, 1);
  return dfa;
}

PrefixCode gen_oneword_code(std::size_t k) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  std::string x = std::string(k, 'a') + "b" + std::string(k + 1, 'a') + "b";
  return validate_code({x});
}

std::vector<std::string> letter_alphabet(std::size_t size) {
  if (size == 0 || size > 26) throw PreconditionError("alphabet size must be in 1..26");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

PartialDfa gen_random_partial(std::size_t n, std::size_t alpha, double density, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("n must be positive");
  if (!(density > 0.0 && density <= 1.0)) throw PreconditionError("density must be in (0, 1]");
  const auto tokens = letter_alphabet(alpha);
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kGenerateRetries; ++attempt) {
    PartialDfa dfa(n, tokens);
    for (State q = 0; q < n; ++q) {
      for (Letter a = 0; a < alpha; ++a) {
        // Draw both values unconditionally so the stream layout is fixed.
        const double u = rng.unit();
        const State t = rng.below(static_cast<std::uint32_t>(n));
        if (density >= 1.0 || u < density) dfa.set(q, a, t);
      }
    }
    if (is_strongly_connected(dfa)) return dfa;
  }
  throw LimitError("no strongly connected automaton after " + std::to_string(kGenerateRetries) + " draws; try a higher density");
}

PrefixCode gen_random_prefix_code(std::size_t count, std::size_t maxlen, std::size_t alpha, std::uint64_t seed) {
  if (count == 0) throw PreconditionError("count must be positive");
  if (maxlen == 0) throw PreconditionError("maxlen must be positive");
  const auto tokens = letter_alphabet(alpha);
  if (alpha == 1 && count > 1) throw PreconditionError("a unary alphabet admits only one codeword");
  Rng rng(seed);
  std::vector<std::string> words;
  // A greedy draw can paint itself into a corner (e.g. both one-letter
  // words taken); start over after too many consecutive clashes.
  std::size_t restarts = 0, clashes = 0;
  while (words.size() < count) {
    if (clashes > kClashLimit) {
      if (++restarts > kGenerateRetries) throw LimitError("could not draw " + std::to_string(count) + " prefix-free codewords; try a larger maxlen or alphabet");
      words.clear();
      clashes = 0;
    }
    const std::size_t len = 1 + rng.below(static_cast<std::uint32_t>(maxlen));
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w += tokens[rng.below(static_cast<std::uint32_t>(alpha))];
    const bool clash = std::any_of(words.begin(), words.end(), [&](const std::string& x) {
      const std::size_t m = std::min(x.size(), w.size());
      return x.compare(0, m, w, 0, m) == 0;
    });
    if (clash) {
      ++clashes;
      continue;
    }
    clashes = 0;
    words.push_back(std::move(w));
  }
  return validate_code(words);
}

}  // namespace psync
