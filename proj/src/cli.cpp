#include "psync/cli.hpp"

#include <CLI11.hpp>

#include <sstream>

#include "psync/codes.hpp"
#include "psync/constructions.hpp"
#include "psync/equivalence.hpp"
#include "psync/error.hpp"
#include "psync/generators.hpp"
#include "psync/io.hpp"
#include "psync/oracle.hpp"
#include "psync/synchronization.hpp"
#include "psync/verify.hpp"

namespace psync::cli {

namespace {

// Output of one command in both renderings.
class Report {
 public:
  void line(const std::string& s) { text_ += s + "\n"; }
  void raw(const std::string& s) { text_ += s; }
  template <class T>
  void kv(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    summary_.emplace_back(key, s.str());
  }

  const std::string& text() const { return text_; }
  const auto& summary() const { return summary_; }

 private:
  std::string text_;
  std::vector<std::pair<std::string, std::string>> summary_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string word_text(const PartialDfa& dfa, const Word& w) { return format_word(dfa, w); }

void word_result(Report& r, const PartialDfa& dfa, const Word& w) {
  const std::size_t k = rank(dfa, w);
  r.line(word_text(dfa, w));
  r.line("rank=" + std::to_string(k) + " len=" + std::to_string(w.size()));
  r.kv("word", word_text(dfa, w));
  r.kv("rank", k);
  r.kv("len", w.size());
}

void dfa_result(Report& r, const PartialDfa& dfa, const std::vector<std::string>& comments) {
  r.raw(write_dfa(dfa, comments));
  std::size_t defined = 0;
  for (State q = 0; q < dfa.size(); ++q)
    for (Letter a = 0; a < dfa.alphabet_size(); ++a) defined += dfa.defined(q, a);
  r.kv("states", dfa.size());
  r.kv("letters", dfa.alphabet_size());
  r.kv("transitions", defined);
}

std::vector<Word> parse_word_list(const PartialDfa& dfa, const std::string& text) {
  std::vector<Word> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_word(dfa, text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

PrefixCode read_code(const std::string& path) { return validate_code(parse_code_words(read_file(path))); }

std::string code_text(const PrefixCode& code) {
  std::string out;
  for (const auto& w : code.words) out += code.text(w) + "\n";
  return out;
}

struct Options {
  std::string format = "text";
  std::string file;
  std::string method = "greedy";
  std::string w1, w2, word;
  std::size_t target = 1, size_cap = 8, n = 0, k = 0, alphabet = 2, count = 0, maxlen = 0, trials = 1000;
  double density = 1.0;
  std::uint64_t seed = 0;
  bool oracle = false, exhaustive = false;
};

int cmd_classes(const Options& o, Report& r) {
  const PartialDfa dfa = read_dfa_file(o.file);
  const Partition part = inseparability_partition(dfa);
  r.kv("classes", part.count());
  r.kv("stable_level", part.stable_level());
  for (std::size_t c = 0; c < part.count(); ++c) {
    r.line("class " + std::to_string(c) + ": " + format_states(part.members(c)));
    r.kv("class." + std::to_string(c), format_states(part.members(c)));
  }
  r.line("count=" + std::to_string(part.count()) + " stable_level=" + std::to_string(part.stable_level()));
  return kOk;
}

int cmd_build(const std::string& kind, const Options& o, Report& r) {
  const PartialDfa dfa = read_dfa_file(o.file);
  if (kind == "fixing") {
    dfa_result(r, fixing(dfa), {"fixing automaton: undefined transitions become self-loops"});
  } else if (kind == "collecting") {
    const Reduction red = reduction_to_complete(dfa);
    std::vector<std::string> comments{"collecting automaton, root class " + std::to_string(red.tree.root_class) + " = " +
                                      format_states(red.tree.partition.members(red.tree.root_class))};
    for (std::size_t c = 0; c < red.tree.partition.count(); ++c) {
      if (c == red.tree.root_class) continue;
      const auto& e = red.tree.parent[c];
      comments.push_back("class " + std::to_string(c) + " -" + dfa.token(e.letter) + "-> class " + std::to_string(e.parent));
    }
    dfa_result(r, red.automaton, comments);
  } else if (kind == "duplicating") {
    dfa_result(r, duplicating(dfa), {"duplicating automaton: state i + " + std::to_string(dfa.size()) + " copies state i"});
  } else {
    const InducedAutomaton ind = induced(dfa, parse_word_list(dfa, o.w1), parse_word_list(dfa, o.w2));
    std::vector<std::string> comments{"induced automaton on " + format_states(ind.region)};
    for (std::size_t i = 0; i < ind.states.size(); ++i) comments.push_back("state " + std::to_string(i) + " = base state " + std::to_string(ind.states[i]));
    dfa_result(r, ind.as_dfa(), comments);
  }
  return kOk;
}

int cmd_sync_check(const Options& o, Report& r) {
  const PartialDfa dfa = read_dfa_file(o.file);
  if (is_synchronizing(dfa)) {
    r.line("synchronizing");
    r.kv("synchronizing", "yes");
    return kOk;
  }
  const std::size_t k = greedy_min_rank(dfa).final_rank;
  r.line("not synchronizing: minimal non-zero rank " + std::to_string(k));
  r.kv("synchronizing", "no");
  r.kv("min_rank", k);
  return kNegative;
}

int cmd_sync_word(const Options& o, Report& r) {
  const PartialDfa dfa = read_dfa_file(o.file);
  Word w;
  if (o.method == "greedy") {
    w = greedy_min_rank(dfa).word;
  } else if (o.method == "fixing") {
    w = min_rank_word_via_fixing(dfa).word;
  } else if (o.method == "collecting") {
    w = reset_word_via_collecting(dfa);
  } else {
    const OracleReport report = subset_bfs(dfa);
    w = report.at(report.min_nonzero_rank()).witness;
  }
  word_result(r, dfa, w);
  return rank(dfa, w) == 1 ? kOk : kNegative;
}

int cmd_rank_min(const Options& o, Report& r) {
  const PartialDfa dfa = read_dfa_file(o.file);
  const SyncResult res = greedy_min_rank(dfa);
  r.line("minimal non-zero rank " + std::to_string(res.final_rank));
  word_result(r, dfa, res.word);
  return kOk;
}

int cmd_rank_word(const Options& o, Report& r) {
  const PartialDfa dfa = read_dfa_file(o.file);
  word_result(r, dfa, rank_target_word(dfa, o.target, o.oracle ? RankSearch::oracle : RankSearch::greedy));
  return kOk;
}

int cmd_code_validate(const Options& o, Report& r) {
  PrefixCode code;
  try {
    code = read_code(o.file);
  } catch (const PreconditionError& e) {
    r.line(std::string("invalid: ") + e.what());
    r.kv("valid", "no");
    r.kv("reason", e.what());
    return kNegative;
  }
  std::string letters;
  for (const auto& a : code.alphabet) letters += (letters.empty() ? "" : " ") + a;
  r.line("valid prefix code: " + std::to_string(code.words.size()) + " words over {" + letters + "}, height " + std::to_string(code.max_length() - 1));
  r.kv("valid", "yes");
  r.kv("words", code.words.size());
  r.kv("alphabet", letters);
  r.kv("height", code.max_length() - 1);
  r.kv("total_length", code.total_length());
  return kOk;
}

int cmd_code_literal(const Options& o, Report& r) {
  const LiteralAutomaton lit = literal_automaton(read_code(o.file));
  std::vector<std::string> comments{"literal automaton, root 0, height " + std::to_string(lit.height)};
  for (State q = 0; q < lit.dfa.size(); ++q) comments.push_back("state " + std::to_string(q) + " = " + lit.prefix_text(q));
  dfa_result(r, lit.dfa, comments);
  r.kv("height", lit.height);
  return kOk;
}

int cmd_code_logrank(const Options& o, Report& r) {
  const LiteralAutomaton lit = literal_automaton(read_code(o.file));
  const LogRankResult res = log_rank_search(lit);
  const LogRankBounds b = log_rank_bounds(lit);
  word_result(r, lit.dfa, res.word());
  r.line("bound_rank=" + std::to_string(b.max_rank) + " bound_len=" + std::to_string(b.max_length));
  r.kv("bound_rank", b.max_rank);
  r.kv("bound_len", b.max_length);
  r.kv("alpha", word_text(lit.dfa, res.alpha));
  r.kv("v", word_text(lit.dfa, res.v));
  return kOk;
}

int cmd_code_reset(const Options& o, Report& r) {
  const PrefixCode code = read_code(o.file);
  const LiteralAutomaton lit = literal_automaton(code);
  word_result(r, lit.dfa, literal_reset_word(lit, code));
  return kOk;
}

int cmd_code_oneword(const Options& o, Report& r) {
  const PrefixCode code = validate_code({o.word});
  const LiteralAutomaton lit = literal_automaton(code);
  const PrimitiveRoot pr = primitive_root(code.words.front());
  r.line("root=" + code.text(pr.root) + " power=" + std::to_string(pr.power) + " rank=" + std::to_string(pr.power));
  r.kv("root", code.text(pr.root));
  r.kv("power", pr.power);
  r.kv("rank", pr.power);
  if (pr.power > 1) {
    r.line("not synchronizing");
    return kNegative;
  }
  const Conjugate c = weinbaum_conjugate(code.words.front(), lit);
  const std::string u = c.u.empty() ? "-" : code.text(c.u), v = c.v.empty() ? "-" : code.text(c.v);
  r.line("conjugate u=" + u + " v=" + v);
  r.line("reset=" + code.text(c.shorter()) + " len=" + std::to_string(c.shorter().size()));
  r.kv("u", u);
  r.kv("v", v);
  r.kv("reset", code.text(c.shorter()));
  r.kv("len", c.shorter().size());
  return kOk;
}

int cmd_oracle(const Options& o, Report& r) {
  const PartialDfa dfa = read_dfa_file(o.file);
  const OracleReport report = subset_bfs(dfa);
  for (std::size_t k = 0; k < report.entries.size(); ++k) {
    const auto& e = report.entries[k];
    if (!e.reachable) continue;
    r.line("r=" + std::to_string(k) + " len=" + std::to_string(e.length) + " word=" + word_text(dfa, e.witness));
    r.kv("rt." + std::to_string(k), e.length);
  }
  r.kv("min_rank", report.min_nonzero_rank());
  return kOk;
}

int cmd_verify_duplicating(const Options& o, Report& r) {
  const DuplicatingReport rep = duplicating_identity_check(read_dfa_file(o.file));
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  for (const auto& row : rep.rows) {
    r.line("r=" + std::to_string(row.rank) + " rt=" + opt(row.base_threshold) + " doubled=" + opt(row.doubled_threshold) +
           " shape=" + (row.base_threshold ? (row.shape_ok ? "ok" : "bad") : "-"));
    r.kv("rt." + std::to_string(row.rank), opt(row.base_threshold) + "/" + opt(row.doubled_threshold));
  }
  r.line(rep.holds ? "identity holds" : "identity fails");
  r.kv("holds", yes_no(rep.holds));
  return rep.holds ? kOk : kNegative;
}

int cmd_verify_all(const Options& o, Report& r) {
  CheckConfig config;
  config.size_cap = o.size_cap;
  const auto reports = run_checks(acceptance_checks(), config, true);
  bool all = true;
  for (const auto& rep : reports) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << (rep.outcome.passed ? "[PASS] " : "[FAIL] ") << rep.name << " (" << rep.seconds << " s) " << rep.description << ": " << rep.outcome.detail;
    r.line(s.str());
    r.kv(rep.name, rep.outcome.passed ? "pass" : "fail");
    all = all && rep.outcome.passed;
  }
  return all ? kOk : kNegative;
}

int cmd_search(const Options& o, Report& r) {
  ExtremalProfile profile;
  profile.exhaustive = o.exhaustive;
  profile.seed = o.seed;
  profile.trials = o.trials;
  const ExtremalResult res = extremal_search(o.n, profile);
  r.line("n=" + std::to_string(res.n) + " target=" + std::to_string(res.target) + " candidates=" + std::to_string(res.candidates) +
         " qualifying=" + std::to_string(res.qualifying) + " max_rt=" + std::to_string(res.best_threshold) + " attained=" + yes_no(res.attained()));
  r.kv("n", res.n);
  r.kv("target", res.target);
  r.kv("candidates", res.candidates);
  r.kv("qualifying", res.qualifying);
  r.kv("max_rt", res.best_threshold);
  r.kv("attained", yes_no(res.attained()));
  if (res.best) r.raw(write_dfa(*res.best, {"reset threshold " + std::to_string(res.best_threshold)}));
  return res.attained() ? kOk : kNegative;
}

int cmd_gen(const std::string& kind, const Options& o, Report& r) {
  if (kind == "cerny") {
    dfa_result(r, gen_cerny(o.n), {"Cerny automaton C_" + std::to_string(o.n)});
  } else if (kind == "random-dfa") {
    std::ostringstream d;
    d << o.density;
    dfa_result(r, gen_random_partial(o.n, o.alphabet, o.density, o.seed),
               {"random automaton n=" + std::to_string(o.n) + " alphabet=" + std::to_string(o.alphabet) + " density=" + d.str() + " seed=" + std::to_string(o.seed)});
  } else {
    const PrefixCode code = kind == "oneword" ? gen_oneword_code(o.k) : gen_random_prefix_code(o.count, o.maxlen, o.alphabet, o.seed);
    r.raw(code_text(code));
    r.kv("words", code.words.size());
    r.kv("total_length", code.total_length());
  }
  return kOk;
}

}  // namespace

CommandOutcome run(const std::vector<std::string>& args) {
  CommandOutcome outcome;
  Options o;
  CLI::App app{"Synchronization of partial automata and prefix codes", "psync"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "summary"}));

  auto file_arg = [&](CLI::App* sub, const char* what = "Automaton file") { sub->add_option("file", o.file, what)->required(); };

  auto* classes = app.add_subcommand("classes", "Inseparability classes");
  file_arg(classes);

  auto* build = app.add_subcommand("build", "Derived automata")->require_subcommand(1);
  std::vector<CLI::App*> builds;
  for (const char* kind : {"fixing", "collecting", "duplicating", "induced"}) {
    auto* sub = build->add_subcommand(kind, std::string(kind) + " automaton");
    file_arg(sub);
    builds.push_back(sub);
  }
  builds[3]->add_option("--w1", o.w1, "Comma-separated words (tokens separated by spaces, - for empty)")->required();
  builds[3]->add_option("--w2", o.w2, "Comma-separated words")->required();

  auto* sync = app.add_subcommand("sync", "Synchronization")->require_subcommand(1);
  auto* sync_check = sync->add_subcommand("check", "Decide synchronizability");
  file_arg(sync_check);
  auto* sync_word = sync->add_subcommand("word", "Reset word, or a minimal-rank word");
  file_arg(sync_word);
  sync_word->add_option("--method", o.method, "Construction to use (default greedy)")->check(CLI::IsMember({"greedy", "fixing", "collecting", "oracle"}));

  auto* rank_cmd = app.add_subcommand("rank", "Minimal-rank words")->require_subcommand(1);
  auto* rank_min = rank_cmd->add_subcommand("min", "Minimal non-zero rank");
  file_arg(rank_min);
  auto* rank_word = rank_cmd->add_subcommand("word", "Word of rank at most --target");
  file_arg(rank_word);
  rank_word->add_option("--target", o.target, "Largest acceptable rank")->required()->check(CLI::PositiveNumber);
  rank_word->add_flag("--oracle", o.oracle, "Shortest such word by exhaustive search");

  auto* code = app.add_subcommand("code", "Prefix codes")->require_subcommand(1);
  std::vector<CLI::App*> codes;
  const std::pair<const char*, const char*> code_kinds[] = {{"validate", "Check that a code is a prefix code"},
                                                            {"literal", "Literal automaton of a code"},
                                                            {"logrank", "Logarithmic-rank word"},
                                                            {"reset", "Reset word of the literal automaton"}};
  for (const auto& [kind, help] : code_kinds) {
    auto* sub = code->add_subcommand(kind, help);
    file_arg(sub, "Code file, one codeword per line");
    codes.push_back(sub);
  }
  auto* oneword = code->add_subcommand("oneword", "Analyse a one-word code");
  oneword->add_option("word", o.word, "The single codeword")->required();

  auto* oracle = app.add_subcommand("oracle", "Exact rank thresholds (n <= 24)");
  file_arg(oracle);

  auto* verify = app.add_subcommand("verify", "Verification suites")->require_subcommand(1);
  auto* verify_dup = verify->add_subcommand("duplicating", "Threshold doubling identity");
  file_arg(verify_dup);
  auto* verify_all = verify->add_subcommand("all", "Run every acceptance check");
  verify_all->add_option("--size-cap", o.size_cap, "Largest automaton size used")->check(CLI::Range(3, 8));

  auto* search = app.add_subcommand("search", "Searches")->require_subcommand(1);
  auto* extremal = search->add_subcommand("extremal", "Largest reset threshold with one deficient state");
  extremal->add_option("--n", o.n, "Number of states")->required()->check(CLI::PositiveNumber);
  auto* exhaustive = extremal->add_flag("--exhaustive", o.exhaustive, "Enumerate every candidate (n <= 6)");
  auto* seed_opt = extremal->add_option("--seed", o.seed, "Seed for random sampling")->excludes(exhaustive);
  extremal->add_option("--trials", o.trials, "Number of random samples")->needs(seed_opt);

  auto* gen = app.add_subcommand("gen", "Generators")->require_subcommand(1);
  auto* gen_cerny_cmd = gen->add_subcommand("cerny", "Cerny automaton C_n");
  gen_cerny_cmd->add_option("--n", o.n, "Number of states")->required()->check(CLI::PositiveNumber);
  auto* gen_oneword_cmd = gen->add_subcommand("oneword", "Codeword a^k b a^(k+1) b");
  gen_oneword_cmd->add_option("--k", o.k, "Exponent k >= 1")->required();
  auto* gen_dfa = gen->add_subcommand("random-dfa", "Random strongly connected partial automaton");
  gen_dfa->add_option("--n", o.n, "Number of states")->required()->check(CLI::PositiveNumber);
  gen_dfa->add_option("--alphabet", o.alphabet, "Alphabet size");
  gen_dfa->add_option("--density", o.density, "Probability that a transition is defined");
  gen_dfa->add_option("--seed", o.seed, "Generator seed")->required();
  auto* gen_code = gen->add_subcommand("random-code", "Random prefix code");
  gen_code->add_option("--count", o.count, "Number of codewords")->required();
  gen_code->add_option("--maxlen", o.maxlen, "Longest codeword length")->required();
  gen_code->add_option("--alphabet", o.alphabet, "Alphabet size");
  gen_code->add_option("--seed", o.seed, "Generator seed")->required();

  std::vector<std::string> argv_store{"psync"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    outcome.out = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kUsage;
    outcome.err = std::string("error: ") + e.what() + "\n\n" + app.help();
    return outcome;
  }
  if (extremal->parsed() && !o.exhaustive && extremal->count("--seed") == 0) {
    outcome.exit_code = kUsage;
    outcome.err = "error: search extremal needs --exhaustive or --seed\n";
    return outcome;
  }

  Report report;
  try {
    int code_value = kOk;
    if (classes->parsed()) code_value = cmd_classes(o, report);
    for (auto* b : builds)
      if (b->parsed()) code_value = cmd_build(b->get_name(), o, report);
    if (sync_check->parsed()) code_value = cmd_sync_check(o, report);
    if (sync_word->parsed()) code_value = cmd_sync_word(o, report);
    if (rank_min->parsed()) code_value = cmd_rank_min(o, report);
    if (rank_word->parsed()) code_value = cmd_rank_word(o, report);
    if (codes[0]->parsed()) code_value = cmd_code_validate(o, report);
    if (codes[1]->parsed()) code_value = cmd_code_literal(o, report);
    if (codes[2]->parsed()) code_value = cmd_code_logrank(o, report);
    if (codes[3]->parsed()) code_value = cmd_code_reset(o, report);
    if (oneword->parsed()) code_value = cmd_code_oneword(o, report);
    if (oracle->parsed()) code_value = cmd_oracle(o, report);
    if (verify_dup->parsed()) code_value = cmd_verify_duplicating(o, report);
    if (verify_all->parsed()) code_value = cmd_verify_all(o, report);
    if (extremal->parsed()) code_value = cmd_search(o, report);
    if (gen_cerny_cmd->parsed()) code_value = cmd_gen("cerny", o, report);
    if (gen_oneword_cmd->parsed()) code_value = cmd_gen("oneword", o, report);
    if (gen_dfa->parsed()) code_value = cmd_gen("random-dfa", o, report);
    if (gen_code->parsed()) code_value = cmd_gen("random-code", o, report);
    outcome.exit_code = code_value;
  } catch (const NotSynchronizingError& e) {
    outcome.exit_code = kNegative;
    report.line(e.what());
    report.kv("synchronizing", "no");
    report.kv("reason", e.what());
  } catch (const InvariantError& e) {
    outcome.exit_code = kInternal;
    outcome.err = std::string("internal error: ") + e.what() + "\n";
    return outcome;
  } catch (const Error& e) {
    outcome.exit_code = kUsage;
    outcome.err = (o.file.empty() ? std::string() : o.file + ": ") + e.what() + "\n";
    return outcome;
  }

  outcome.summary = report.summary();
  if (o.format == "summary") {
    for (const auto& [k, v] : outcome.summary) outcome.out += k + "=" + v + "\n";
  } else {
    outcome.out = report.text();
  }
  return outcome;
}

}  // namespace psync::cli
