#include "psync/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "psync/error.hpp"

namespace psync {

std::string_view strip_line(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  constexpr std::string_view ws = " \t\r\n";
  auto b = line.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = line.find_last_not_of(ws);
  return line.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto s = strip_line(raw);
    if (!s.empty()) out.push_back({number, s});
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError(line, std::string("expected decimal ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

PartialDfa parse_dfa(std::string_view text, const ParseOptions& options) {
  auto lines = significant_lines(text);
  auto line_no = [&](std::size_t i) { return i < lines.size() ? lines[i].number : (lines.empty() ? 1 : lines.back().number + 1); };

  if (lines.empty() || lines[0].text != "dfa v1") throw ParseError(line_no(0), "expected header 'dfa v1'");

  if (lines.size() < 2) throw ParseError(line_no(1), "missing 'states <n>' line");
  auto states_tok = split_ws(lines[1].text);
  if (states_tok.size() != 2 || states_tok[0] != "states") throw ParseError(line_no(1), "expected 'states <n>'");
  std::size_t n = parse_count(states_tok[1], line_no(1), "state count");
  if (n == 0) throw ParseError(line_no(1), "state count must be positive");

  if (lines.size() < 3) throw ParseError(line_no(2), "missing 'alphabet ...' line");
  auto alpha_tok = split_ws(lines[2].text);
  if (alpha_tok.size() < 2 || alpha_tok[0] != "alphabet") throw ParseError(line_no(2), "expected 'alphabet <tok> ...'");
  std::vector<std::string> alphabet;
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 1; i < alpha_tok.size(); ++i) {
    if (!seen.insert(alpha_tok[i]).second) throw ParseError(line_no(2), "duplicate letter '" + std::string(alpha_tok[i]) + "'");
    if (alpha_tok[i] == kGammaToken && !options.allow_reserved_tokens) throw ParseError(line_no(2), "letter '@g' is reserved");
    alphabet.emplace_back(alpha_tok[i]);
  }

  PartialDfa dfa(n, std::move(alphabet));
  std::vector<bool> assigned(n * dfa.alphabet_size(), false);
  for (std::size_t i = 3; i < lines.size(); ++i) {
    std::size_t ln = lines[i].number;
    auto tok = split_ws(lines[i].text);
    if (tok.size() != 3) throw ParseError(ln, "expected '<src> <letter> <dst>'");
    std::size_t src = parse_count(tok[0], ln, "source state");
    std::size_t dst = parse_count(tok[2], ln, "target state");
    if (src >= n) throw ParseError(ln, "source state " + std::to_string(src) + " out of range (states " + std::to_string(n) + ")");
    if (dst >= n) throw ParseError(ln, "target state " + std::to_string(dst) + " out of range (states " + std::to_string(n) + ")");
    auto letter = dfa.letter_of(tok[1]);
    if (!letter) throw ParseError(ln, "unknown letter '" + std::string(tok[1]) + "'");
    auto slot = src * dfa.alphabet_size() + *letter;
    if (assigned[slot]) throw ParseError(ln, "duplicate transition for (" + std::to_string(src) + ", " + std::string(tok[1]) + ")");
    assigned[slot] = true;
    dfa.set(static_cast<State>(src), *letter, static_cast<State>(dst));
  }
  return dfa;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PartialDfa read_dfa_file(const std::string& path, const ParseOptions& options) {
  return parse_dfa(read_file(path), options);
}

std::string write_dfa(const PartialDfa& dfa, const std::vector<std::string>& comments) {
  std::ostringstream out;
  out << "dfa v1\n";
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "states " << dfa.size() << '\n';
  out << "alphabet";
  for (const auto& tok : dfa.alphabet()) out << ' ' << tok;
  out << '\n';
  for (State q = 0; q < dfa.size(); ++q) {
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) {
      State t = dfa.next(q, a);
      if (t != kUndef) out << q << ' ' << dfa.token(a) << ' ' << t << '\n';
    }
  }
  return out.str();
}

std::string format_word(const PartialDfa& dfa, std::span<const Letter> w) {
  if (w.empty()) return "-";
  std::string out;
  for (Letter a : w) {
    if (!out.empty()) out += ' ';
    out += dfa.token(a);
  }
  return out;
}

Word parse_word(const PartialDfa& dfa, std::string_view text) {
  auto toks = split_ws(strip_line(text));
  Word w;
  if (toks.size() == 1 && toks[0] == "-") return w;
  for (auto tok : toks) {
    auto a = dfa.letter_of(tok);
    if (!a) throw ParseError(1, "unknown letter '" + std::string(tok) + "' in word");
    w.push_back(*a);
  }
  return w;
}

std::string format_states(const StateSet& s) {
  std::string out;
  s.for_each([&](State q) {
    if (!out.empty()) out += ' ';
    out += std::to_string(q);
  });
  return out;
}

std::vector<std::string> parse_code_words(std::string_view text) {
  std::vector<std::string> words;
  for (const auto& line : significant_lines(text)) {
    if (split_ws(line.text).size() != 1) throw ParseError(line.number, "codeword must not contain whitespace");
    words.emplace_back(line.text);
  }
  return words;
}

}  // namespace psync
