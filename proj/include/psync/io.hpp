#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psync/automaton.hpp"

namespace psync {

struct ParseOptions {
  /// Accept the reserved `@g` token in the alphabet. Off for user input;
  /// on when reading back the output of a construction.
  bool allow_reserved_tokens = false;
};

/// Reads a `dfa v1` document:
///
///     dfa v1
///     states <n>
///     alphabet <tok> <tok> ...
///     <src> <tok> <dst>      (zero or more, each (src, tok) at most once)
///
/// `#` starts a comment, blank lines are ignored. Omitted pairs are
/// undefined. Errors carry the physical line number.
PartialDfa parse_dfa(std::string_view text, const ParseOptions& options = {});
PartialDfa read_dfa_file(const std::string& path, const ParseOptions& options = {});

/// Inverse of parse_dfa. `comments` are emitted as `#` lines after the header.
std::string write_dfa(const PartialDfa& dfa, const std::vector<std::string>& comments = {});

/// Space separated tokens, `-` for the empty word.
std::string format_word(const PartialDfa& dfa, std::span<const Letter> w);
Word parse_word(const PartialDfa& dfa, std::string_view text);

std::string format_states(const StateSet& s);

/// One codeword per line, `#` comments, surrounding whitespace trimmed.
std::vector<std::string> parse_code_words(std::string_view text);

std::string read_file(const std::string& path);

/// Drops a `#` comment and surrounding whitespace.
std::string_view strip_line(std::string_view line);
std::vector<std::string_view> split_ws(std::string_view s);

}  // namespace psync
