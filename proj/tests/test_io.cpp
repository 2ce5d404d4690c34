#include <doctest.h>

#include "psync/error.hpp"
#include "psync/io.hpp"
#include "psync/verify.hpp"

using namespace psync;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_dfa(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("fixture file parses to the built-in example") {
  CHECK(read_dfa_file(PSYNC_FIXTURES "/six_state.dfa") == six_state_example());
}

TEST_CASE("write and parse round trip") {
  const PartialDfa dfa = six_state_example();
  const std::string text = write_dfa(dfa, {"hello"});
  CHECK(text.rfind("dfa v1\n", 0) == 0);
  CHECK(text.find("# hello") != std::string::npos);
  CHECK(parse_dfa(text) == dfa);
}

TEST_CASE("comments and blank lines are ignored") {
  const PartialDfa dfa = parse_dfa("# lead\n\ndfa v1  # header\nstates 2\nalphabet x yy\n\n0 yy 1 # edge\n1 x 0\n");
  CHECK(dfa.size() == 2);
  CHECK(dfa.token(1) == "yy");
  CHECK(dfa.next(0, 1) == 1);
  CHECK(dfa.next(0, 0) == kUndef);
}

TEST_CASE("parse errors report the physical line") {
  CHECK(error_line("dfa v2\nstates 1\nalphabet a\n") == 1);
  CHECK(error_line("dfa v1\n\nstates x\nalphabet a\n") == 3);
  CHECK(error_line("dfa v1\nstates 2\nalphabet a a\n") == 3);
  CHECK(error_line("dfa v1\nstates 2\nalphabet a @g\n") == 3);
  CHECK(error_line("dfa v1\nstates 2\nalphabet a\n0 a 2\n") == 4);
  CHECK(error_line("dfa v1\nstates 2\nalphabet a\n5 a 1\n") == 4);
  CHECK(error_line("dfa v1\nstates 2\nalphabet a\n0 b 1\n") == 4);
  CHECK(error_line("dfa v1\nstates 2\nalphabet a\n0 a 1\n# c\n0 a 0\n") == 6);
  CHECK(error_line("dfa v1\nstates 2\n") > 0);
}

TEST_CASE("reserved token is accepted on request") {
  ParseOptions options;
  options.allow_reserved_tokens = true;
  CHECK(parse_dfa("dfa v1\nstates 1\nalphabet a @g\n0 @g 0\n", options).alphabet_size() == 2);
}

TEST_CASE("words") {
  const PartialDfa dfa = six_state_example();
  CHECK(format_word(dfa, parse_word(dfa, "b a b")) == "b a b");
  CHECK(parse_word(dfa, "-").empty());
  CHECK(parse_word(dfa, "").empty());
  CHECK(format_word(dfa, Word{}) == "-");
  CHECK_THROWS_AS(parse_word(dfa, "c"), Error);
}

TEST_CASE("code files") {
  CHECK(parse_code_words("# c\nab\n\n  ba  \n") == std::vector<std::string>{"ab", "ba"});
  CHECK_THROWS_AS(parse_code_words("a b\n"), ParseError);
}
